use std::cmp::Ordering;

/// Exponent vector of a monomial.
pub type Exps = Vec<u32>;

pub fn degree(a: &[u32]) -> u32 {
    a.iter().sum()
}

/// Graded reverse lexicographic comparison: total degree first, then the
/// monomial with the smaller exponent in the last differing variable is
/// larger.
pub fn grevlex(a: &[u32], b: &[u32]) -> Ordering {
    match degree(a).cmp(&degree(b)) {
        Ordering::Equal => {}
        o => return o,
    }
    for i in (0..a.len()).rev() {
        if a[i] != b[i] {
            return b[i].cmp(&a[i]);
        }
    }
    Ordering::Equal
}

pub fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

pub fn lcm(a: &[u32], b: &[u32]) -> Exps {
    a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
}

pub fn quotient(b: &[u32], a: &[u32]) -> Exps {
    b.iter().zip(a).map(|(x, y)| x - y).collect()
}

pub fn product(a: &[u32], b: &[u32]) -> Exps {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// All exponent vectors in `n` variables of total degree at most `d`,
/// in increasing grevlex order.
pub fn simplex(n: usize, d: u32) -> Vec<Exps> {
    fn rec(i: usize, left: u32, cur: &mut Exps, out: &mut Vec<Exps>) {
        if i == cur.len() {
            out.push(cur.clone());
            return;
        }
        for e in 0..=left {
            cur[i] = e;
            rec(i + 1, left - e, cur, out);
        }
        cur[i] = 0;
    }
    let mut out = Vec::new();
    let mut cur = vec![0; n];
    rec(0, d, &mut cur, &mut out);
    out.sort_by(|a, b| grevlex(a, b));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grevlex_examples() {
        // x0 > x1 > x2 in degree one
        assert_eq!(grevlex(&[1, 0, 0], &[0, 1, 0]), Ordering::Greater);
        assert_eq!(grevlex(&[0, 1, 0], &[0, 0, 1]), Ordering::Greater);
        // x1^2 > x0 x2 in grevlex (differs from lex)
        assert_eq!(grevlex(&[0, 2, 0], &[1, 0, 1]), Ordering::Greater);
        assert_eq!(grevlex(&[0, 0, 2], &[1, 0, 0]), Ordering::Greater);
    }

    #[test]
    fn simplex_count() {
        assert_eq!(simplex(5, 6).len(), 462);
        assert_eq!(simplex(9, 4).len(), 715);
        assert_eq!(simplex(0, 3).len(), 1);
    }
}
