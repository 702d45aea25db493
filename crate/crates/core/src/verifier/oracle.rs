//! Coordinate-free disjointness count for convex position.

/// Number of disjoint chord pairs among `edges` of a convex polygon whose
/// vertices `0..n` are listed in cyclic order. Two chords are disjoint iff
/// they use four distinct vertices whose endpoints do not interleave.
///
/// # Panics
///
/// Panics when an index is `>= n` or an edge is a loop.
pub fn convex_chord_oracle(n: usize, edges: &[(usize, usize)]) -> u64 {
    let chords: Vec<(usize, usize)> = edges
        .iter()
        .map(|&(a, b)| {
            assert!(
                a < n && b < n && a != b,
                "chord ({a}, {b}) invalid for n = {n}"
            );
            (a.min(b), a.max(b))
        })
        .collect();
    let strictly_between = |x: usize, lo: usize, hi: usize| lo < x && x < hi;
    let mut count = 0;
    for (i, &(a, b)) in chords.iter().enumerate() {
        for &(c, d) in &chords[i + 1..] {
            if a == c || a == d || b == c || b == d {
                continue;
            }
            let interleave = strictly_between(c, a, b) != strictly_between(d, a, b);
            if !interleave {
                count += 1;
            }
        }
    }
    count
}
