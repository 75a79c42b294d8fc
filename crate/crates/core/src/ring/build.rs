use super::{Element, Ring, RingError};

/// Default cap on the order of any constructed ring.
pub const DEFAULT_MAX_ORDER: usize = 4096;

fn check_cap(requested: u128, cap: usize) -> Result<usize, RingError> {
    if requested > cap as u128 {
        Err(RingError::SizeCap { requested, cap })
    } else {
        Ok(requested as usize)
    }
}

fn tabulate(order: usize, f: impl Fn(Element, Element) -> Element) -> Vec<Element> {
    let mut t = Vec::with_capacity(order * order);
    for a in 0..order {
        for b in 0..order {
            t.push(f(a, b));
        }
    }
    t
}

/// Integers modulo `n`. `n = 1` gives the zero ring, whose unity is 0.
pub fn make_zn(n: usize) -> Ring {
    assert!(n >= 1, "Z_n needs n >= 1");
    Ring::from_flat(n, tabulate(n, |a, b| (a + b) % n), tabulate(n, |a, b| (a * b) % n), Some(1 % n), format!("Zn:{n}"))
        .expect("modular tables are well formed")
}

/// Additive group `Z_n` with every product zero.
pub fn make_zero_mul(n: usize) -> Ring {
    assert!(n >= 1, "zero-multiplication ring needs n >= 1");
    Ring::from_flat(
        n,
        tabulate(n, |a, b| (a + b) % n),
        vec![0; n * n],
        if n == 1 { Some(0) } else { None },
        format!("zmul:{n}"),
    )
    .expect("zero-multiplication tables are well formed")
}

/// Componentwise sum `r ⊕ s`; the pair `(a, b)` has index `a + |r|·b`.
pub fn make_direct_sum(r: &Ring, s: &Ring, cap: usize) -> Result<Ring, RingError> {
    let (m, n) = (r.order(), s.order());
    let order = check_cap(m as u128 * n as u128, cap)?;
    let split = |x: Element| (x % m, x / m);
    let join = |a: Element, b: Element| a + m * b;
    let add = tabulate(order, |x, y| {
        let ((a, b), (c, d)) = (split(x), split(y));
        join(r.add(a, c), s.add(b, d))
    });
    let mul = tabulate(order, |x, y| {
        let ((a, b), (c, d)) = (split(x), split(y));
        join(r.mul(a, c), s.mul(b, d))
    });
    let one = match (r.one(), s.one()) {
        (Some(a), Some(b)) => Some(join(a, b)),
        _ => None,
    };
    Ring::from_flat(order, add, mul, one, format!("dsum({},{})", r.label(), s.label()))
}

/// Square matrices whose entries at `positions` (row, col) are free and zero elsewhere.
/// Entry `p` of `positions` is digit `p` (least significant first) of the element index.
fn matrix_subring(
    base: &Ring,
    k: usize,
    positions: &[(usize, usize)],
    cap: usize,
    label: String,
) -> Result<Ring, RingError> {
    if k == 0 {
        return Err(RingError::Invalid("matrix size must be at least 1".into()));
    }
    let one = base.one().ok_or(RingError::UnityRequired("matrix ring"))?;
    let q = base.order();
    let requested = (q as u128).checked_pow(positions.len() as u32).unwrap_or(u128::MAX);
    let order = check_cap(requested, cap)?;

    let mut slot = vec![None; k * k];
    for (p, &(i, j)) in positions.iter().enumerate() {
        slot[i * k + j] = Some(p);
    }
    let decode = |mut x: Element| {
        let mut m = vec![0; k * k];
        for &(i, j) in positions {
            m[i * k + j] = x % q;
            x /= q;
        }
        m
    };
    let encode = |m: &[Element]| positions.iter().rev().fold(0, |acc, &(i, j)| acc * q + m[i * k + j]);
    let mats: Vec<Vec<Element>> = (0..order).map(decode).collect();

    let add = tabulate(order, |x, y| {
        let s: Vec<_> = mats[x].iter().zip(&mats[y]).map(|(&a, &b)| base.add(a, b)).collect();
        encode(&s)
    });
    let mul = tabulate(order, |x, y| {
        let (a, b) = (&mats[x], &mats[y]);
        let mut c = vec![0; k * k];
        for i in 0..k {
            for j in 0..k {
                let mut acc = 0;
                for l in 0..k {
                    acc = base.add(acc, base.mul(a[i * k + l], b[l * k + j]));
                }
                c[i * k + j] = acc;
            }
        }
        debug_assert!(c.iter().enumerate().all(|(p, &v)| v == 0 || slot[p].is_some()));
        encode(&c)
    });
    let mut id = vec![0; k * k];
    for i in 0..k {
        id[i * k + i] = one;
    }
    Ring::from_flat(order, add, mul, Some(encode(&id)), label)
}

/// Full `k×k` matrix ring over a unital base; entries are digits in row-major order.
pub fn make_matrix_ring(base: &Ring, k: usize, cap: usize) -> Result<Ring, RingError> {
    let positions: Vec<_> = (0..k).flat_map(|i| (0..k).map(move |j| (i, j))).collect();
    matrix_subring(base, k, &positions, cap, format!("M:{k}:{}", base.label()))
}

/// Upper-triangular `k×k` matrices over a unital base.
pub fn make_upper_triangular(base: &Ring, k: usize, cap: usize) -> Result<Ring, RingError> {
    let positions: Vec<_> = (0..k).flat_map(|i| (i..k).map(move |j| (i, j))).collect();
    matrix_subring(base, k, &positions, cap, format!("T:{k}:{}", base.label()))
}
