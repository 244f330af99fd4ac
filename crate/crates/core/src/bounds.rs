//! Closed-form bounds on the game length `c(G)`.

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::graph::{count_acyclic_orientations, min_degree_core, Graph};

/// Default constant for the density lower bound. Small enough that the bound
/// holds on every graph the exact solver handles.
pub const DEFAULT_C: f64 = 8.0;

#[derive(Debug, Clone, Copy, PartialEq, thiserror::Error)]
#[error("constant C must be positive and finite, got {0}")]
pub struct InvalidConstant(pub f64);

/// Every bound is computed after deleting isolated vertices, which cannot
/// change `c`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    /// Every vertex needs an incident question: `ceil(n / 2)`.
    pub n_half: u64,
    /// `ceil(log2 a(G))`; absent when `a(G)` is too costly to count.
    pub info: Option<u64>,
    /// `max(0, ceil(log2((d + 1)! / 2^n)))` for `d` the minimum degree of
    /// the peeled core.
    pub degeneracy: u64,
    /// `e log2(n) / (C n)`.
    pub density: f64,
    pub edge_upper: u64,
    /// `n^2/4 + 2 n^{7/4} (ln n)^{1/4}`, valid for large `n`.
    pub jiang_upper: f64,
    /// Guaranteed triangle count `max(0, (m / 3n)(4m - n^2))`.
    pub moon_moser_triangles: f64,
    pub best_lower: u64,
    pub best_upper: u64,
    /// The integer lower bounds already beat `density`.
    pub density_dominated: bool,
}

/// `ceil(log2 x)` for `x >= 1`.
fn ceil_log2(x: &BigUint) -> u64 {
    let bits = x.bits();
    if x.count_ones() == 1 {
        bits - 1
    } else {
        bits
    }
}

fn factorial(k: usize) -> BigUint {
    (1..=k).map(BigUint::from).product()
}

pub fn bound_report(g: &Graph, c: f64) -> Result<BoundReport, InvalidConstant> {
    if !(c > 0.0 && c.is_finite()) {
        return Err(InvalidConstant(c));
    }
    let (g, _) = g.without_isolated();
    let n = g.n();
    let m = g.m();

    let n_half = n.div_ceil(2) as u64;
    let info = count_acyclic_orientations(&g).ok().map(|a| ceil_log2(&a));
    let degeneracy = if m == 0 {
        0
    } else {
        let d = min_degree_core(&g).min_degree;
        ceil_log2(&factorial(d + 1)).saturating_sub(n as u64)
    };
    let density = density_lower(n, m, c);
    let nf = n as f64;
    let jiang_upper = if n < 2 {
        nf * nf / 4.0
    } else {
        nf * nf / 4.0 + 2.0 * nf.powf(1.75) * nf.ln().powf(0.25)
    };
    let mf = m as f64;
    let moon_moser_triangles = if n == 0 {
        0.0
    } else {
        (mf / (3.0 * nf) * (4.0 * mf - nf * nf)).max(0.0)
    };

    let integer_lower = n_half.max(info.unwrap_or(0)).max(degeneracy);
    let best_lower = integer_lower.max(density.ceil() as u64);
    let best_upper = (m as u64).min(jiang_upper.floor() as u64);
    Ok(BoundReport {
        n_half,
        info,
        degeneracy,
        density,
        edge_upper: m as u64,
        jiang_upper,
        moon_moser_triangles,
        best_lower,
        best_upper,
        density_dominated: integer_lower as f64 > density,
    })
}

fn density_lower(n: usize, m: usize, c: f64) -> f64 {
    if n < 2 {
        return 0.0;
    }
    let n = n as f64;
    m as f64 * n.log2() / (c * n)
}

/// The trivial approximation: `lower = e log2(n) / (C n)`, `upper = e`,
/// and their ratio bound `C n / log2 n` (absent for `n < 2`).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ApproxEstimate {
    pub lower: f64,
    pub upper: u64,
    pub ratio: Option<f64>,
}

pub fn approx_estimate(g: &Graph, c: f64) -> Result<ApproxEstimate, InvalidConstant> {
    if !(c > 0.0 && c.is_finite()) {
        return Err(InvalidConstant(c));
    }
    let n = g.n();
    Ok(ApproxEstimate {
        lower: density_lower(n, g.m(), c),
        upper: g.m() as u64,
        ratio: (n >= 2).then(|| c * n as f64 / (n as f64).log2()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, GeneratorSpec};

    fn gen(spec: GeneratorSpec) -> Graph {
        generate(&spec).unwrap()
    }

    #[test]
    fn small_reports() {
        let r = bound_report(&gen(GeneratorSpec::complete(3)), 10.0).unwrap();
        assert_eq!((r.n_half, r.info, r.edge_upper), (2, Some(3), 3));
        let r = bound_report(&gen(GeneratorSpec::cycle(4)), 10.0).unwrap();
        assert_eq!(r.info, Some(4));
        let r = bound_report(&gen(GeneratorSpec::star(4)), DEFAULT_C).unwrap();
        assert_eq!(
            (r.n_half, r.info, r.edge_upper, r.best_lower, r.best_upper),
            (3, Some(4), 4, 4, 4)
        );
        let r = bound_report(&gen(GeneratorSpec::complete(4)), DEFAULT_C).unwrap();
        assert_eq!(r.info, Some(5));
    }

    #[test]
    fn isolated_vertices_are_ignored() {
        let g = Graph::new(6, [(0, 1), (1, 2), (0, 2)]).unwrap();
        let k3 = gen(GeneratorSpec::complete(3));
        assert_eq!(bound_report(&g, 2.0).unwrap(), bound_report(&k3, 2.0).unwrap());
        let r = bound_report(&Graph::empty(4), 1.0).unwrap();
        assert_eq!((r.best_lower, r.best_upper, r.info), (0, 0, Some(0)));
    }

    #[test]
    fn degeneracy_entry() {
        // K8: d = 7, ceil(log2 8!) = 16, minus 8
        let r = bound_report(&gen(GeneratorSpec::complete(8)), DEFAULT_C).unwrap();
        assert_eq!(r.degeneracy, 8);
        assert!(r.degeneracy <= r.info.unwrap());
        assert_eq!(bound_report(&gen(GeneratorSpec::path(5)), 1.0).unwrap().degeneracy, 0);
    }

    #[test]
    fn ceil_log2_exact() {
        for (x, want) in [
            (1u32, 0),
            (2, 1),
            (3, 2),
            (4, 2),
            (5, 3),
            (24, 5),
            (1024, 10),
            (1025, 11),
        ] {
            assert_eq!(ceil_log2(&BigUint::from(x)), want, "{x}");
        }
    }

    #[test]
    fn approximation() {
        let a = approx_estimate(&gen(GeneratorSpec::complete(4)), 1.0).unwrap();
        assert_eq!((a.lower, a.upper, a.ratio), (3.0, 6, Some(2.0)));
        let a = approx_estimate(&gen(GeneratorSpec::turan(10)), 1.0).unwrap();
        assert!((a.lower - 25.0 * 10f64.log2() / 10.0).abs() < 1e-12);
        assert_eq!(a.upper, 25);
        let a = approx_estimate(&Graph::empty(5), 3.0).unwrap();
        assert_eq!((a.lower, a.upper), (0.0, 0));
        assert!(approx_estimate(&Graph::empty(5), 0.0).is_err());
        assert!(bound_report(&Graph::empty(5), -1.0).is_err());
    }

    #[test]
    fn scales_inversely_with_c() {
        let g = gen(GeneratorSpec::gnp(12, 0.5, 1));
        let a = bound_report(&g, 1.0).unwrap().density;
        let b = bound_report(&g, 4.0).unwrap().density;
        assert_eq!(a, 4.0 * b);
    }
}
