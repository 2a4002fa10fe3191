use super::gram::GramParameterization;
use super::jacobi::jacobi_eigendecomposition;
use super::SearchConfig;

const JACOBI_TOL: f64 = 1e-13;
/// Iterations between stagnation checks.
const WINDOW: usize = 250;

/// A fiber point whose smallest eigenvalue is at least `-convergence_tol`.
#[derive(Clone, Debug, PartialEq)]
pub struct ApSolution {
    pub gram: Vec<Vec<f64>>,
    pub iterations: usize,
    pub min_eigenvalue: f64,
    /// `max(0, -λ_min)`.
    pub residual: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ApStall {
    pub iterations: usize,
    /// Last fiber point.
    pub gram: Vec<Vec<f64>>,
    pub min_eigenvalue: f64,
    /// Frobenius distance from the last fiber point to the PSD cone.
    pub gap: f64,
    /// `Π_PSD(G) − G`, the negative part of the last fiber point with its sign flipped.
    pub separation: Vec<Vec<f64>>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum ApResult {
    Feasible(ApSolution),
    Stalled(ApStall),
}

/// Alternating projections between the PSD cone and the fiber, starting from the base
/// point.
///
/// The first two stages clip eigenvalues at a positive floor, which pulls the iterate
/// into the interior when the feasible set has one; the last stage clips at zero. A
/// stage ends early once the distance to the cone stops shrinking. The stages share the
/// `max_iterations` budget.
pub fn alternating_projection_solve(pz: &GramParameterization, cfg: &SearchConfig) -> ApResult {
    let k = pz.dim();
    let mut g = pz.base_f64();
    let scale = if k == 0 {
        1.0
    } else {
        ((0..k).map(|i| g[i][i].abs()).sum::<f64>() / k as f64).max(1e-12)
    };
    let budget = cfg.max_iterations.max(1);
    let floors = [1e-2 * scale, 1e-5 * scale, 0.0];
    let mut used = 0;
    let mut last = None;
    for (stage, floor) in floors.into_iter().enumerate() {
        // Early stages get a share of what is left; unused iterations carry over.
        let left = budget - used;
        let iters = match stage {
            0 => left / 4,
            1 => left / 2,
            _ => left,
        };
        match run(pz, cfg, &mut g, floor, iters) {
            Run::Done(min_eig, it) => {
                return ApResult::Feasible(ApSolution {
                    gram: g,
                    iterations: used + it,
                    min_eigenvalue: min_eig,
                    residual: (-min_eig).max(0.0),
                })
            }
            Run::Gave(info, it) => {
                used += it;
                last = Some(info);
            }
        }
    }
    let (min_eigenvalue, gap, separation) = last.expect("three stages ran");
    ApResult::Stalled(ApStall {
        iterations: used,
        gram: g,
        min_eigenvalue,
        gap,
        separation,
    })
}

enum Run {
    Done(f64, usize),
    Gave((f64, f64, Vec<Vec<f64>>), usize),
}

fn run(
    pz: &GramParameterization,
    cfg: &SearchConfig,
    g: &mut Vec<Vec<f64>>,
    floor: f64,
    iters: usize,
) -> Run {
    let k = g.len();
    if k == 0 {
        return Run::Done(0.0, 0);
    }
    let mut history = Vec::new();
    let mut info = (f64::NEG_INFINITY, f64::INFINITY, vec![vec![0.0; k]; k]);
    for it in 0..=iters {
        let Ok(e) = jacobi_eigendecomposition(g, JACOBI_TOL) else {
            break;
        };
        let min_eig = e.values[0];
        let done = if floor > 0.0 {
            min_eig >= 0.5 * floor
        } else {
            min_eig >= -cfg.convergence_tol
        };
        if done {
            return Run::Done(min_eig, it);
        }
        let p = e.reconstruct(|l| l.max(floor));
        let mut sep = vec![vec![0.0; k]; k];
        let mut gap = 0.0;
        for i in 0..k {
            for j in 0..k {
                sep[i][j] = p[i][j] - g[i][j];
                gap += sep[i][j] * sep[i][j];
            }
        }
        info = (min_eig, gap.sqrt(), sep);
        if it == iters {
            return Run::Gave(info, it);
        }
        if it % WINDOW == 0 {
            if let Some(&old) = history.last() {
                if info.1 > 0.999 * old {
                    return Run::Gave(info, it);
                }
            }
            history.push(info.1);
        }
        *g = p;
        pz.project(g);
    }
    Run::Gave(info, iters)
}
