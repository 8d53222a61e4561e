//! Small numerical building blocks shared by the solver modules: bracketed
//! bisection, golden-section minimization, parabolic peak refinement,
//! Gauss-Hermite quadrature nodes, and a dense linear solver for the tiny
//! systems that show up in curve fitting.

/// Refines a root inside a sign-change bracket `[a, b]` by bisection.
///
/// `fa` is `f(a)`, passed in so grid scans do not re-evaluate it. Stops when
/// the bracket is narrower than `xtol` or `|f(mid)| <= ftol`. The caller must
/// supply a genuine bracket; with equal signs the result converges to an
/// endpoint and is meaningless.
pub fn bisect(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64, fa: f64, xtol: f64, ftol: f64) -> f64 {
    let mut sa = fa <= 0.0;
    for _ in 0..200 {
        let m = 0.5 * (a + b);
        let fm = f(m);
        if fm.abs() <= ftol || (b - a).abs() <= xtol {
            return m;
        }
        if (fm <= 0.0) == sa {
            a = m;
            sa = fm <= 0.0;
        } else {
            b = m;
        }
    }
    0.5 * (a + b)
}

/// Minimizes a unimodal function on `[a, b]` by golden-section search.
pub fn golden_min(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64, iters: usize) -> f64 {
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    for _ in 0..iters {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
    }
    0.5 * (a + b)
}

/// Vertex abscissa of the parabola through three equally spaced samples
/// `(x0 - h, ym), (x0, y0), (x0 + h, yp)`. The offset is clamped to half a
/// step so a degenerate triple cannot throw the estimate outside the cell.
pub fn parabolic_vertex(x0: f64, h: f64, ym: f64, y0: f64, yp: f64) -> f64 {
    let denom = ym - 2.0 * y0 + yp;
    if denom.abs() < 1e-300 {
        return x0;
    }
    let delta = 0.5 * (ym - yp) / denom;
    x0 + delta.clamp(-0.5, 0.5) * h
}

/// Nodes and weights of n-point Gauss-Hermite quadrature for
/// integral of exp(-u^2) g(u) du over the real line.
///
/// Roots of the orthonormal Hermite function are bracketed on a dense grid
/// and polished by bisection; weights follow from the derivative identity
/// w_i = 2 / h'_n(u_i)^2. The weights sum to sqrt(pi).
pub fn gauss_hermite(n: usize) -> Vec<(f64, f64)> {
    assert!(n >= 1, "quadrature order must be at least 1");
    // Orthonormal Hermite value h_n(z) and the value of h_{n-1}(z).
    let eval = |z: f64| -> (f64, f64) {
        let mut p1 = std::f64::consts::PI.powf(-0.25);
        let mut p2 = 0.0;
        for j in 1..=n {
            let p3 = p2;
            p2 = p1;
            p1 = z * (2.0 / j as f64).sqrt() * p2 - ((j as f64 - 1.0) / j as f64).sqrt() * p3;
        }
        (p1, p2)
    };
    // All roots lie below sqrt(2n + 1); scan a slightly larger window.
    let upper = (2.0 * n as f64 + 2.0).sqrt();
    let steps = 200 * n.max(4);
    let dz = upper / steps as f64;
    let mut positive = Vec::new();
    let mut prev = eval(0.0).0;
    for k in 1..=steps {
        let z = k as f64 * dz;
        let cur = eval(z).0;
        if prev == 0.0 {
            positive.push((k - 1) as f64 * dz);
        } else if prev.signum() != cur.signum() {
            let root = bisect(|x| eval(x).0, (k - 1) as f64 * dz, z, prev, 1e-15, 0.0);
            positive.push(root);
        }
        prev = cur;
    }
    let mut out = Vec::with_capacity(n);
    let weight = |z: f64| {
        let (_, pm1) = eval(z);
        let dp = (2.0 * n as f64).sqrt() * pm1;
        2.0 / (dp * dp)
    };
    for &z in positive.iter().rev() {
        out.push((-z, weight(z)));
    }
    if n % 2 == 1 {
        out.push((0.0, weight(0.0)));
    }
    for &z in &positive {
        out.push((z, weight(z)));
    }
    debug_assert_eq!(out.len(), n, "root scan must find every quadrature node");
    out
}

/// Solves `a x = b` in place by Gaussian elimination with partial pivoting.
/// Returns None when the matrix is numerically singular.
pub fn solve_linear(a: &mut [Vec<f64>], b: &mut [f64]) -> Option<Vec<f64>> {
    let n = b.len();
    for col in 0..n {
        let pivot = (col..n).max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))?;
        if a[pivot][col].abs() < 1e-300 {
            return None;
        }
        a.swap(col, pivot);
        b.swap(col, pivot);
        for row in col + 1..n {
            let factor = a[row][col] / a[col][col];
            for k in col..n {
                a[row][k] -= factor * a[col][k];
            }
            b[row] -= factor * b[col];
        }
    }
    let mut x = vec![0.0; n];
    for row in (0..n).rev() {
        let mut acc = b[row];
        for k in row + 1..n {
            acc -= a[row][k] * x[k];
        }
        x[row] = acc / a[row][row];
    }
    Some(x)
}

/// Inverts a small dense matrix by Gauss-Jordan elimination on the augmented
/// system. Returns None when singular.
pub fn invert(a: &[Vec<f64>]) -> Option<Vec<Vec<f64>>> {
    let n = a.len();
    let mut aug: Vec<Vec<f64>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { 1.0 } else { 0.0 }));
            r
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).max_by(|&i, &j| aug[i][col].abs().total_cmp(&aug[j][col].abs()))?;
        if aug[pivot][col].abs() < 1e-300 {
            return None;
        }
        aug.swap(col, pivot);
        let p = aug[col][col];
        for v in aug[col].iter_mut() {
            *v /= p;
        }
        for row in 0..n {
            if row == col {
                continue;
            }
            let factor = aug[row][col];
            if factor == 0.0 {
                continue;
            }
            for k in 0..2 * n {
                let delta = factor * aug[col][k];
                aug[row][k] -= delta;
            }
        }
    }
    Some(aug.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// Linear quantile of already sorted data, q in [0, 1].
pub fn quantile_sorted(sorted: &[f64], q: f64) -> f64 {
    assert!(!sorted.is_empty(), "quantile of empty slice");
    let pos = q.clamp(0.0, 1.0) * (sorted.len() - 1) as f64;
    let lo = pos.floor() as usize;
    let hi = pos.ceil() as usize;
    let frac = pos - lo as f64;
    sorted[lo] * (1.0 - frac) + sorted[hi] * frac
}
