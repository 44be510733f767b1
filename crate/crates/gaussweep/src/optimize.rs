//! Root finding and derivative-free maximization used by the verifiers:
//! bisection with a bracketing certificate, and grid scans polished by a
//! shrinking pattern search.

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SearchError {
    #[error("no sign change on [{0}, {1}]")]
    NoSignChange(f64, f64),
    #[error("empty grid")]
    EmptyGrid,
}

/// A bracketed root: the true zero lies in [lo, hi].
#[derive(Debug, Clone, Copy)]
pub struct RootBracket {
    pub lo: f64,
    pub hi: f64,
    pub root: f64,
    pub residual: f64,
}

/// Bisection to interval width `width`, keeping the sign-change certificate.
pub fn bisect<F: Fn(f64) -> f64>(
    f: F,
    mut lo: f64,
    mut hi: f64,
    width: f64,
) -> Result<RootBracket, SearchError> {
    let mut flo = f(lo);
    let fhi = f(hi);
    if flo == 0.0 {
        return Ok(RootBracket {
            lo,
            hi: lo,
            root: lo,
            residual: 0.0,
        });
    }
    if fhi == 0.0 {
        return Ok(RootBracket {
            lo: hi,
            hi,
            root: hi,
            residual: 0.0,
        });
    }
    if flo.signum() == fhi.signum() {
        return Err(SearchError::NoSignChange(lo, hi));
    }
    for _ in 0..200 {
        if hi - lo <= width {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let fm = f(mid);
        if fm == 0.0 {
            return Ok(RootBracket {
                lo: mid,
                hi: mid,
                root: mid,
                residual: 0.0,
            });
        }
        if fm.signum() == flo.signum() {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    let root = 0.5 * (lo + hi);
    Ok(RootBracket {
        lo,
        hi,
        root,
        residual: f(root).abs(),
    })
}

/// Uniform grid of n ≥ 2 points over [a, b], endpoints included.
pub fn linspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    assert!(n >= 2);
    (0..n)
        .map(|i| a + (b - a) * i as f64 / (n - 1) as f64)
        .collect()
}

/// Log-spaced grid over [a, b], a > 0.
pub fn logspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    assert!(n >= 2 && a > 0.0 && b > a);
    let (la, lb) = (a.ln(), b.ln());
    (0..n)
        .map(|i| (la + (lb - la) * i as f64 / (n - 1) as f64).exp())
        .collect()
}

#[derive(Debug, Clone)]
pub struct GridMax {
    pub value: f64,
    pub argmax: Vec<f64>,
    /// Argmax sits on the boundary of the search box.
    pub on_boundary: bool,
    /// Half of the final pattern-search cell diameter per coordinate.
    pub cell_radius: Vec<f64>,
}

/// Exhaustive scan over the cartesian product of per-axis grids, followed by
/// `rounds` rounds of compass pattern search with shrink factor 0.5 inside
/// the box hull of the grids.  Deterministic: ties keep the first (smallest
/// lexicographic index) grid point.
pub fn grid_maximize<F: Fn(&[f64]) -> f64>(
    f: F,
    axes: &[Vec<f64>],
    rounds: usize,
) -> Result<GridMax, SearchError> {
    if axes.is_empty() || axes.iter().any(|a| a.is_empty()) {
        return Err(SearchError::EmptyGrid);
    }
    let dims = axes.len();
    let lo: Vec<f64> = axes
        .iter()
        .map(|a| a.iter().cloned().fold(f64::INFINITY, f64::min))
        .collect();
    let hi: Vec<f64> = axes
        .iter()
        .map(|a| a.iter().cloned().fold(f64::NEG_INFINITY, f64::max))
        .collect();

    let mut best_val = f64::NEG_INFINITY;
    let mut best: Vec<f64> = axes.iter().map(|a| a[0]).collect();
    let mut idx = vec![0usize; dims];
    'outer: loop {
        let point: Vec<f64> = idx.iter().zip(axes).map(|(&i, a)| a[i]).collect();
        let v = f(&point);
        if v > best_val {
            best_val = v;
            best = point;
        }
        // odometer increment
        for d in (0..dims).rev() {
            idx[d] += 1;
            if idx[d] < axes[d].len() {
                continue 'outer;
            }
            idx[d] = 0;
        }
        break;
    }

    // initial pattern step: one grid spacing per axis
    let mut step: Vec<f64> = axes
        .iter()
        .enumerate()
        .map(|(d, a)| {
            if a.len() >= 2 {
                (hi[d] - lo[d]) / (a.len() - 1) as f64
            } else {
                0.0
            }
        })
        .collect();
    for _ in 0..rounds {
        let mut improved = true;
        while improved {
            improved = false;
            for d in 0..dims {
                if step[d] == 0.0 {
                    continue;
                }
                for sgn in [1.0, -1.0] {
                    let mut cand = best.clone();
                    cand[d] = (cand[d] + sgn * step[d]).clamp(lo[d], hi[d]);
                    let v = f(&cand);
                    if v > best_val {
                        best_val = v;
                        best = cand;
                        improved = true;
                    }
                }
            }
        }
        for s in step.iter_mut() {
            *s *= 0.5;
        }
    }

    let tol = 1e-12;
    let on_boundary = best
        .iter()
        .enumerate()
        .any(|(d, &x)| (x - lo[d]).abs() <= tol || (x - hi[d]).abs() <= tol);
    Ok(GridMax {
        value: best_val,
        argmax: best,
        on_boundary,
        cell_radius: step,
    })
}
