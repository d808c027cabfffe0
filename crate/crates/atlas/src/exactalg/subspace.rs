use super::field::Field;
use super::mat::Mat;

/// Number of `d`-dimensional subspaces of `F_q^n`.
pub fn gaussian_binomial(n: u32, d: u32, q: u64) -> u128 {
    if d > n {
        return 0;
    }
    let q = q as u128;
    let mut num = 1u128;
    let mut den = 1u128;
    for i in 0..d {
        num *= q.pow(n - i) - 1;
        den *= q.pow(i + 1) - 1;
    }
    num / den
}

/// Calls `visit` once for every `d`-dimensional subspace of `F_q^n`, given as
/// its unique `d x n` reduced row echelon basis. Subspaces are produced cell
/// by cell, pivot sets in lexicographic order, free entries as an odometer
/// over `field.element`.
pub fn for_each_subspace<F: Field>(field: &F, d: usize, n: usize, mut visit: impl FnMut(&Mat<F>)) {
    let q = field
        .order()
        .expect("subspace enumeration needs a finite field");
    let elems: Vec<F::Elem> = (0..q).map(|i| field.element(i)).collect();
    let mut pivots: Vec<usize> = (0..d).collect();
    if d > n {
        return;
    }
    loop {
        let free: Vec<(usize, usize)> = (0..d)
            .flat_map(|r| {
                ((pivots[r] + 1)..n)
                    .filter(|c| !pivots.contains(c))
                    .map(move |c| (r, c))
            })
            .collect();
        let mut m = Mat::zeros(field, d, n);
        for (r, &c) in pivots.iter().enumerate() {
            m.set(r, c, field.one());
        }
        let mut digits = vec![0usize; free.len()];
        loop {
            for (k, &(r, c)) in free.iter().enumerate() {
                m.set(r, c, elems[digits[k]].clone());
            }
            visit(&m);
            let mut k = 0;
            while k < digits.len() {
                digits[k] += 1;
                if digits[k] < q as usize {
                    break;
                }
                digits[k] = 0;
                k += 1;
            }
            if k == digits.len() {
                break;
            }
        }
        // next pivot set in lexicographic order
        let mut i = d;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if pivots[i] < n - d + i {
                pivots[i] += 1;
                for j in i + 1..d {
                    pivots[j] = pivots[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Normalized representative of a projective point: first nonzero
/// coordinate equal to one.
pub fn normalize_projective<F: Field>(field: &F, v: &[F::Elem]) -> Option<Vec<F::Elem>> {
    let i = v.iter().position(|x| !field.is_zero(x))?;
    let inv = field.inv(&v[i]).unwrap();
    Some(v.iter().map(|x| field.mul(x, &inv)).collect())
}
