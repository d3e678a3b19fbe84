//! Test-side reference implementations, written without the library's
//! polynomial or elimination code.

use num_rational::BigRational;
use num_traits::{One, Zero};

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(n.into())
}

/// Dense Gauss-Jordan over Q. Returns one solution of `A·x = b` (free
/// unknowns set to zero) or `None` if inconsistent.
pub fn dense_solve(mut a: Vec<Vec<Q>>, mut b: Vec<Q>, ncols: usize) -> Option<Vec<Q>> {
    let nrows = a.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..nrows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        b.swap(r, p);
        let inv = Q::one() / &a[r][c];
        for v in a[r].iter_mut() {
            *v *= &inv;
        }
        b[r] = &b[r] * &inv;
        let pivot_row = a[r].clone();
        for i in 0..nrows {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for (x, p) in a[i].iter_mut().zip(&pivot_row) {
                    *x -= &f * p;
                }
                let t = &f * &b[r];
                b[i] -= t;
            }
        }
        pivots.push(c);
        r += 1;
        if r == nrows {
            break;
        }
    }
    if b[r..].iter().any(|v| !v.is_zero()) {
        return None;
    }
    let mut x = vec![Q::zero(); ncols];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = b[i].clone();
    }
    Some(x)
}

fn at(v: &[Q], i: usize) -> Q {
    v.get(i).cloned().unwrap_or_else(Q::zero)
}

/// Searches `z` of degree `≤ max_deg` with `z' = a·z + b`, all dense
/// coefficient vectors in ascending degree.
pub fn ode_search(a: &[Q], b: &[Q], max_deg: usize) -> Option<Vec<Q>> {
    let n = max_deg + 1;
    let height = (a.len() + n).max(b.len()).max(n);
    let mut rows = Vec::with_capacity(height);
    let mut rhs = Vec::with_capacity(height);
    for p in 0..height {
        // coefficient of x^p in z' − a·z equals b_p
        let mut row = vec![Q::zero(); n];
        if p + 1 < n {
            row[p + 1] += q(p as i64 + 1);
        }
        for (k, entry) in row.iter_mut().enumerate() {
            if p >= k {
                *entry -= at(a, p - k);
            }
        }
        rows.push(row);
        rhs.push(at(b, p));
    }
    dense_solve(rows, rhs, n)
}

/// Dense product of univariate coefficient vectors.
pub fn dense_mul(a: &[Q], b: &[Q]) -> Vec<Q> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Q::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Every nonzero `l ∈ {0..=bound}^s` with `Σ lᵢ·aᵢ = 0`, using integer
/// coefficient vectors, sorted by entry sum then lexicographically.
pub fn resonance_grid(a: &[Vec<i64>], bound: u64) -> Vec<Vec<u64>> {
    let s = a.len();
    let height = a.iter().map(Vec::len).max().unwrap_or(0);
    let mut out = Vec::new();
    let mut l = vec![0u64; s];
    loop {
        if l.iter().any(|&v| v > 0) {
            let vanishes = (0..height).all(|p| {
                a.iter()
                    .zip(&l)
                    .map(|(c, &li)| c.get(p).copied().unwrap_or(0) as i128 * li as i128)
                    .sum::<i128>()
                    == 0
            });
            if vanishes {
                out.push(l.clone());
            }
        }
        let mut i = 0;
        loop {
            if i == s {
                out.sort_by(|x, y| x.iter().sum::<u64>().cmp(&y.iter().sum::<u64>()).then_with(|| x.cmp(y)));
                return out;
            }
            if l[i] < bound {
                l[i] += 1;
                break;
            }
            l[i] = 0;
            i += 1;
        }
    }
}

/// `D(f)` computed by the Leibniz rule on products of generators, with `f`
/// given as a list of terms `(coefficient, exponents)` and `images[v] = D(x_v)`.
/// Independent of the library's `∂/∂v` based application.
pub fn leibniz_apply(
    images: &[derivlab::Polynomial],
    ctx: &derivlab::VarContext,
    terms: &[(Q, Vec<u32>)],
) -> derivlab::Polynomial {
    use derivlab::poly::Monomial;
    use derivlab::Polynomial;
    let mut total = Polynomial::zero(ctx);
    for (c, e) in terms {
        // expand the monomial as a word of generators, x_v repeated e_v times
        let word: Vec<usize> = e.iter().enumerate().flat_map(|(v, &k)| std::iter::repeat_n(v, k as usize)).collect();
        for (pos, &v) in word.iter().enumerate() {
            let mut rest = vec![0u32; e.len()];
            for (j, &w) in word.iter().enumerate() {
                if j != pos {
                    rest[w] += 1;
                }
            }
            let m = Polynomial::term(ctx, Monomial::new(rest), c.clone());
            total = total + &m * &images[v];
        }
    }
    total
}
