//! Width thresholds above which a triconnected torso must carry a long
//! cycle, and the oracle budgets that go with them.

use crate::class::GraphClass;

/// Default constant `c` of the `c·k⁴` vertex budget for classes without an
/// explicit bound.
pub const DEFAULT_POLY_C: usize = 16;

const CAP: f64 = (1u64 << 62) as f64;

/// `⌈x⌉`, tolerant of floating-point noise on exact powers.
fn ceil_tol(x: f64) -> usize {
    if !x.is_finite() || x >= CAP {
        return 1 << 62;
    }
    let r = x.round();
    if (x - r).abs() <= 1e-9 * r.max(1.0) {
        r as usize
    } else {
        x.ceil() as usize
    }
}

/// Lower bound on the circumference of a triconnected graph of the class on
/// `n ≥ 3` vertices.
pub fn circumference_lower_bound(c: GraphClass, n: usize) -> f64 {
    let n = n as f64;
    match c {
        GraphClass::Planar => n.powf(2f64.ln() / 3f64.ln()),
        GraphClass::K3tMinorFree(t) => {
            let e = (t * (t - 1)) as f64;
            0.5f64.powf(e) * n.powf(2f64.ln() / 1729f64.ln())
        }
        GraphClass::ClawFree => (n / 12.0).powf(0.753) + 2.0,
        GraphClass::MaxDegree(d) => n.powf(1.0 / degree_base(d).log2()) / 2.0 + 3.0,
    }
}

/// `r = max(64, 4Δ + 1)`. Degree 3 is covered by the bound for degree 4,
/// which gives the same `r`.
fn degree_base(d: usize) -> f64 {
    (4 * d.max(4) + 1).max(64) as f64
}

/// Smallest `T ≥ 3` such that every triconnected graph of the class on `T`
/// or more vertices has a cycle of length at least `k`.
pub fn width_threshold(c: GraphClass, k: usize) -> usize {
    let kf = k as f64;
    let raw = match c {
        GraphClass::Planar => kf.powf(3f64.log2()),
        GraphClass::K3tMinorFree(t) => {
            let e = (t * (t - 1)) as f64;
            // 2^{t(t-1)} overflows f64 long before it matters; saturate
            (e + kf.log2()) * 1729f64.log2()
        }
        GraphClass::ClawFree => {
            if k <= 2 {
                0.0
            } else {
                12.0 * (kf - 2.0).powf(1.0 / 0.753)
            }
        }
        GraphClass::MaxDegree(d) => {
            if k <= 3 {
                0.0
            } else {
                (2.0 * (kf - 3.0)).powf(degree_base(d).log2())
            }
        }
    };
    let raw = match c {
        GraphClass::K3tMinorFree(_) => {
            if raw >= 62.0 {
                CAP
            } else {
                raw.exp2()
            }
        }
        _ => raw,
    };
    ceil_tol(raw).max(3)
}

/// Vertex budget of the planar k-Cycle kernel: `⌊(3k+1)·k^{log₂3} + k⌋`.
pub fn planar_cycle_budget(k: usize) -> usize {
    let kf = k as f64;
    let b = (3.0 * kf + 1.0) * kf.powf(3f64.log2()) + kf;
    let r = b.round();
    if (b - r).abs() <= 1e-9 * r.max(1.0) {
        r as usize
    } else {
        b.floor() as usize
    }
}

/// `c·k⁴`, saturating.
pub fn poly_budget(k: usize, c: usize) -> usize {
    let k = k.max(1);
    c.saturating_mul(k.saturating_pow(4))
}

/// The `c` of [`poly_budget`], overridable through `TK_BUDGET_POLY_C`.
pub fn poly_c_from_env() -> usize {
    std::env::var("TK_BUDGET_POLY_C")
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_POLY_C)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        assert_eq!(width_threshold(GraphClass::Planar, 8), 27);
        assert_eq!(width_threshold(GraphClass::MaxDegree(3), 5), 4096);
        assert_eq!(width_threshold(GraphClass::ClawFree, 10), 190);
        assert_eq!(width_threshold(GraphClass::Planar, 6), 18);
        assert_eq!(width_threshold(GraphClass::K3tMinorFree(3), 4), 1 << 62);
        assert_eq!(planar_cycle_budget(6), 331);
        assert_eq!(planar_cycle_budget(2), 23);
    }

    #[test]
    fn threshold_forces_k() {
        for k in 3..40 {
            for c in [GraphClass::Planar, GraphClass::ClawFree, GraphClass::MaxDegree(3), GraphClass::MaxDegree(20)] {
                let t = width_threshold(c, k);
                if t < 1 << 40 {
                    assert!(circumference_lower_bound(c, t) >= k as f64 - 1e-9, "{c} {k}");
                    if t > 3 {
                        assert!(circumference_lower_bound(c, t - 1) < k as f64, "{c} {k} not minimal");
                    }
                }
            }
        }
    }
}
