//! Exact Euclidean distance transform (lower envelope of parabolas, applied
//! per row then per column).

/// Distance from every cell of a `height × width` table to the nearest
/// member cell. Returns infinity everywhere when there are no members.
pub(crate) fn distance_to_set(height: usize, width: usize, member: &[bool]) -> Vec<f64> {
    debug_assert_eq!(member.len(), height * width);
    let mut sq: Vec<f64> = member
        .iter()
        .map(|&m| if m { 0.0 } else { f64::INFINITY })
        .collect();

    let mut line = Vec::with_capacity(height.max(width));
    for r in 0..height {
        line.clear();
        line.extend_from_slice(&sq[r * width..(r + 1) * width]);
        let out = transform_1d(&line);
        sq[r * width..(r + 1) * width].copy_from_slice(&out);
    }
    for col in 0..width {
        line.clear();
        line.extend((0..height).map(|r| sq[r * width + col]));
        let out = transform_1d(&line);
        for (r, v) in out.into_iter().enumerate() {
            sq[r * width + col] = v;
        }
    }
    sq.into_iter().map(f64::sqrt).collect()
}

/// Squared-distance transform of a sampled function along one line.
fn transform_1d(f: &[f64]) -> Vec<f64> {
    let n = f.len();
    let mut out = vec![f64::INFINITY; n];
    // parabola apexes and the boundaries between them
    let mut apex: Vec<usize> = Vec::with_capacity(n);
    let mut bound: Vec<f64> = Vec::with_capacity(n + 1);

    for q in (0..n).filter(|&q| f[q].is_finite()) {
        loop {
            match apex.last() {
                None => {
                    apex.push(q);
                    bound.clear();
                    bound.push(f64::NEG_INFINITY);
                    break;
                }
                Some(&p) => {
                    let s = ((f[q] + (q * q) as f64) - (f[p] + (p * p) as f64))
                        / (2.0 * (q as f64 - p as f64));
                    if s <= *bound.last().unwrap_or(&f64::NEG_INFINITY) {
                        apex.pop();
                        bound.pop();
                        if apex.is_empty() {
                            continue;
                        }
                    } else {
                        apex.push(q);
                        bound.push(s);
                        break;
                    }
                }
            }
        }
    }
    if apex.is_empty() {
        return out;
    }
    let mut k = 0;
    for (q, slot) in out.iter_mut().enumerate() {
        while k + 1 < apex.len() && bound[k + 1] < q as f64 {
            k += 1;
        }
        let p = apex[k];
        let d = q as f64 - p as f64;
        *slot = d * d + f[p];
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn brute(height: usize, width: usize, member: &[bool]) -> Vec<f64> {
        (0..height * width)
            .map(|i| {
                let (r, c) = ((i / width) as f64, (i % width) as f64);
                (0..height * width)
                    .filter(|&j| member[j])
                    .map(|j| {
                        let (r2, c2) = ((j / width) as f64, (j % width) as f64);
                        (r - r2).hypot(c - c2)
                    })
                    .fold(f64::INFINITY, f64::min)
            })
            .collect()
    }

    #[test]
    fn empty_set_is_infinite() {
        assert!(distance_to_set(3, 4, &[false; 12])
            .iter()
            .all(|d| d.is_infinite()));
    }

    #[test]
    fn single_point() {
        let mut m = vec![false; 20];
        m[0] = true;
        let d = distance_to_set(4, 5, &m);
        assert_eq!(d[0], 0.0);
        assert_eq!(d[3 * 5 + 4], 5.0);
    }

    proptest! {
        #[test]
        fn matches_brute_force(h in 1usize..9, w in 1usize..9, bits in proptest::collection::vec(any::<bool>(), 64)) {
            let member: Vec<bool> = bits[..h * w].to_vec();
            let fast = distance_to_set(h, w, &member);
            let slow = brute(h, w, &member);
            for (a, b) in fast.iter().zip(&slow) {
                if b.is_infinite() {
                    prop_assert!(a.is_infinite());
                } else {
                    prop_assert!((a - b).abs() < 1e-9, "{} vs {}", a, b);
                }
            }
        }
    }
}
