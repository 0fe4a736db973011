//! Exponential integral Ei(x) for x > 0, the primitive of e^x / x.

const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;
const SERIES_LIMIT: f64 = 40.0;

/// Ei(x) for x > 0. Returns `+inf` once the value leaves the f64 range.
pub fn ei(x: f64) -> f64 {
    debug_assert!(x > 0.0);
    if x <= SERIES_LIMIT {
        // Ei(x) = γ + ln x + Σ x^n / (n·n!)
        let mut term = 1.0;
        let mut sum = 0.0;
        for n in 1..500 {
            let nf = n as f64;
            term *= x / nf;
            let add = term / nf;
            sum += add;
            if add < sum * 1e-18 {
                break;
            }
        }
        EULER_GAMMA + x.ln() + sum
    } else {
        ln_ei(x).exp()
    }
}

/// ln Ei(x), usable far beyond the f64 range of Ei itself.
pub fn ln_ei(x: f64) -> f64 {
    if x <= SERIES_LIMIT {
        return ei(x).ln();
    }
    // Ei(x) ~ e^x / x · Σ n! / x^n, truncated at the smallest term.
    let mut term: f64 = 1.0;
    let mut sum = 1.0;
    for n in 1..200 {
        let next = term * n as f64 / x;
        if next >= term || next < 1e-18 {
            break;
        }
        term = next;
        sum += term;
    }
    x - x.ln() + sum.ln()
}
