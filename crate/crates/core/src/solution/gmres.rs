//! Restarted GMRES with modified Gram-Schmidt and Givens rotations.

pub struct GmresOutcome {
    pub x: Vec<f64>,
    pub iterations: usize,
    /// Relative residual after each inner iteration.
    pub history: Vec<f64>,
    pub converged: bool,
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

/// Solve `A x = b` for the operator `apply`, starting from zero.
pub fn gmres(
    mut apply: impl FnMut(&[f64]) -> Vec<f64>,
    b: &[f64],
    restart: usize,
    max_iterations: usize,
    tol: f64,
) -> GmresOutcome {
    let n = b.len();
    let bnorm = norm(b);
    let mut x = vec![0.0; n];
    let mut history = Vec::new();
    if bnorm == 0.0 {
        return GmresOutcome {
            x,
            iterations: 0,
            history,
            converged: true,
        };
    }
    let mut iterations = 0;
    while iterations < max_iterations {
        let ax = apply(&x);
        let r: Vec<f64> = b.iter().zip(&ax).map(|(bi, ai)| bi - ai).collect();
        let beta = norm(&r);
        if beta / bnorm <= tol {
            return GmresOutcome {
                x,
                iterations,
                history,
                converged: true,
            };
        }
        let mut basis: Vec<Vec<f64>> = vec![r.iter().map(|v| v / beta).collect()];
        let mut hess: Vec<Vec<f64>> = Vec::new();
        let mut cs: Vec<f64> = Vec::new();
        let mut sn: Vec<f64> = Vec::new();
        let mut g = vec![beta];
        let mut k = 0;
        while k < restart && iterations < max_iterations {
            let mut w = apply(&basis[k]);
            let mut col = vec![0.0; k + 2];
            for (i, v) in basis.iter().enumerate() {
                let hij = dot(&w, v);
                col[i] = hij;
                for (wj, vj) in w.iter_mut().zip(v) {
                    *wj -= hij * vj;
                }
            }
            let wn = norm(&w);
            col[k + 1] = wn;
            for i in 0..k {
                let t = cs[i] * col[i] + sn[i] * col[i + 1];
                col[i + 1] = -sn[i] * col[i] + cs[i] * col[i + 1];
                col[i] = t;
            }
            let d = col[k].hypot(col[k + 1]);
            let (c, s) = if d == 0.0 { (1.0, 0.0) } else { (col[k] / d, col[k + 1] / d) };
            cs.push(c);
            sn.push(s);
            col[k] = d;
            col[k + 1] = 0.0;
            g.push(-s * g[k]);
            g[k] *= c;
            hess.push(col);
            iterations += 1;
            k += 1;
            let rel = g[k].abs() / bnorm;
            history.push(rel);
            if rel <= tol || wn == 0.0 {
                break;
            }
            basis.push(w.iter().map(|v| v / wn).collect());
        }
        // Back substitution on the k × k triangular system.
        let mut y = vec![0.0; k];
        for i in (0..k).rev() {
            let mut s = g[i];
            for (j, yj) in y.iter().enumerate().skip(i + 1) {
                s -= hess[j][i] * yj;
            }
            y[i] = s / hess[i][i];
        }
        for (j, yj) in y.iter().enumerate() {
            for (xi, vi) in x.iter_mut().zip(&basis[j]) {
                *xi += yj * vi;
            }
        }
    }
    let ax = apply(&x);
    let rel = norm(&b.iter().zip(&ax).map(|(bi, ai)| bi - ai).collect::<Vec<_>>()) / bnorm;
    GmresOutcome {
        x,
        iterations,
        history,
        converged: rel <= tol,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn solves_small_nonsymmetric_system() {
        let a = [[4.0, 1.0, 0.0], [2.0, 5.0, 1.0], [0.0, -1.0, 3.0]];
        let x_true = [1.0, -2.0, 0.5];
        let b: Vec<f64> = a.iter().map(|row| dot(row, &x_true)).collect();
        let out = gmres(
            |v| a.iter().map(|row| dot(row, v)).collect(),
            &b,
            2,
            50,
            1e-13,
        );
        assert!(out.converged);
        for (p, q) in out.x.iter().zip(&x_true) {
            assert!((p - q).abs() < 1e-11);
        }
    }
}
