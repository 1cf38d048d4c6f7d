//! Free-group word machinery: reduction, spelling length Λₙ, the abelianized
//! length Λ̄ₙ, the Δ offset for reflection-symmetric prism classes, and the
//! improved lower bound built from them.
//!
//! Spelling length is interval-valued: the deletion search yields a sound
//! upper bound (each single-letter deletion extracts one conjugated
//! generator), the abelianized length and letter-count parity give the lower
//! bound, and exactness is claimed only when the two meet or when a bounded
//! brute-force search over conjugated-generator products confirms the value.

use crate::homotopy::{prism_octant_adjacency, ReflSymClass};
use std::collections::{HashMap, HashSet, VecDeque};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FreeGroupError {
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

/// A freely reduced word in the free group on `n` generators. Letters are
/// nonzero integers: `+j` is the j-th generator, `−j` its inverse
/// (serialized exactly so, e.g. c₁c₂c₁⁻¹c₂⁻¹ ↔ `[1,2,-1,-2]`).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Word {
    letters: Vec<i32>,
    n: usize,
}

fn reduce_letters(letters: &[i32]) -> Vec<i32> {
    let mut out: Vec<i32> = Vec::with_capacity(letters.len());
    for &l in letters {
        if out.last().is_some_and(|&last| last == -l) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

impl Word {
    /// Builds a word from letters, freely reducing. Letters must be nonzero
    /// with |letter| ≤ n.
    pub fn from_letters(n: usize, letters: &[i32]) -> Result<Self, FreeGroupError> {
        for &l in letters {
            if l == 0 || l.unsigned_abs() as usize > n {
                return Err(FreeGroupError::InvalidInput(format!(
                    "letter {l} out of range for {n} generators"
                )));
            }
        }
        Ok(Self { letters: reduce_letters(letters), n })
    }

    pub fn identity(n: usize) -> Self {
        Self { letters: Vec::new(), n }
    }

    /// Single generator c_j (1-based), or its inverse for negative sign.
    pub fn generator(n: usize, j: i32) -> Result<Self, FreeGroupError> {
        Self::from_letters(n, &[j])
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    pub fn generator_count(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn multiply(&self, other: &Word) -> Result<Word, FreeGroupError> {
        if self.n != other.n {
            return Err(FreeGroupError::InvalidInput(
                "words over different generator counts".into(),
            ));
        }
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(Word { letters: reduce_letters(&letters), n: self.n })
    }

    pub fn invert(&self) -> Word {
        let letters: Vec<i32> = self.letters.iter().rev().map(|&l| -l).collect();
        Word { letters, n: self.n }
    }

    /// h · self · h⁻¹.
    pub fn conjugate_by(&self, h: &Word) -> Result<Word, FreeGroupError> {
        h.multiply(self)?.multiply(&h.invert())
    }

    /// Cyclic reduction (repeatedly strip matching first/last letters).
    pub fn cyclically_reduced(&self) -> Word {
        let mut l = self.letters.clone();
        while l.len() >= 2 && l[0] == -l[l.len() - 1] {
            l.pop();
            l.remove(0);
        }
        Word { letters: l, n: self.n }
    }
}

/// Abelianized length: the sum over generators of the absolute net exponent.
pub fn abelianized_length(g: &Word) -> u32 {
    let mut net = vec![0i64; g.n];
    for &l in &g.letters {
        net[(l.unsigned_abs() - 1) as usize] += l.signum() as i64;
    }
    net.iter().map(|d| d.unsigned_abs() as u32).sum()
}

/// Interval result for the spelling length.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpellingResult {
    pub lower: u32,
    pub upper: u32,
    pub exact: bool,
    /// Positions-and-letters of a shortest deletion sequence, when exact.
    pub witness: Option<Vec<(usize, i32)>>,
}

/// Lower bound for Λₙ: the abelianized length, sharpened by parity (every
/// deletion flips the letter-count parity, and length ≡ Λ̄ mod 2) and by
/// Λ ≥ 1 for nontrivial words (hence ≥ 2 when Λ̄ = 0).
fn spelling_lower_bound(g: &Word) -> u32 {
    if g.is_empty() {
        return 0;
    }
    let abar = abelianized_length(g);
    if abar == 0 {
        2
    } else {
        abar
    }
}

/// Spelling length via breadth-first search over single-letter deletions.
/// Deleting the letter at position k extracts the factor (u c u⁻¹) with u
/// the prefix before k, so the number of deletions needed to reach the
/// identity is a valid spelling length; search depth is capped by `budget`.
/// When the budget is exhausted before reaching the identity the result
/// falls back to the trivial upper bound (the word length) with
/// `exact = false` unless the bounds happen to meet.
pub fn spelling_length(g: &Word, budget: u32) -> SpellingResult {
    // Λ is a conjugacy invariant; work on the cyclic reduction.
    let g = g.cyclically_reduced();
    let lower = spelling_lower_bound(&g);
    if g.is_empty() {
        return SpellingResult { lower: 0, upper: 0, exact: true, witness: Some(Vec::new()) };
    }

    // BFS over reduced words reachable by deletions.
    let mut visited: HashMap<Vec<i32>, (Vec<i32>, (usize, i32))> = HashMap::new();
    let mut queue: VecDeque<(Vec<i32>, u32)> = VecDeque::new();
    queue.push_back((g.letters.clone(), 0));
    visited.insert(g.letters.clone(), (g.letters.clone(), (usize::MAX, 0)));
    let mut found_depth: Option<u32> = None;
    while let Some((w, depth)) = queue.pop_front() {
        if w.is_empty() {
            found_depth = Some(depth);
            break;
        }
        if depth >= budget {
            continue;
        }
        for k in 0..w.len() {
            let mut next = Vec::with_capacity(w.len() - 1);
            next.extend_from_slice(&w[..k]);
            next.extend_from_slice(&w[k + 1..]);
            let next = reduce_letters(&next);
            if !visited.contains_key(&next) {
                visited.insert(next.clone(), (w.clone(), (k, w[k])));
                queue.push_back((next, depth + 1));
            }
        }
    }

    match found_depth {
        Some(d) => {
            // Reconstruct the deletion sequence.
            let mut seq = Vec::new();
            let mut cur: Vec<i32> = Vec::new();
            while let Some((parent, step)) = visited.get(&cur) {
                if step.0 == usize::MAX {
                    break;
                }
                seq.push(*step);
                cur = parent.clone();
            }
            seq.reverse();
            // Exactness is claimed here only when the bounds meet; the
            // bounded conjugator search provides independent confirmation
            // through `confirm_with_search` for callers that want it.
            let exact = d == lower;
            let witness = exact.then_some(seq);
            SpellingResult { lower, upper: d, exact, witness }
        }
        None => {
            let upper = g.len() as u32;
            SpellingResult { lower, upper, exact: lower == upper, witness: None }
        }
    }
}

/// All reduced conjugated generators u c^± u⁻¹ with |u| ≤ conj_len.
fn conjugated_generator_moves(n: usize, conj_len: usize) -> Vec<Vec<i32>> {
    let mut conjugators: Vec<Vec<i32>> = vec![Vec::new()];
    let mut frontier: Vec<Vec<i32>> = vec![Vec::new()];
    for _ in 0..conj_len {
        let mut next = Vec::new();
        for u in &frontier {
            for j in 1..=n as i32 {
                for s in [j, -j] {
                    if u.last().is_some_and(|&l| l == -s) {
                        continue;
                    }
                    let mut v = u.clone();
                    v.push(s);
                    next.push(v.clone());
                    conjugators.push(v);
                }
            }
        }
        frontier = next;
    }
    let mut moves = HashSet::new();
    for u in &conjugators {
        for j in 1..=n as i32 {
            for s in [j, -j] {
                let mut w = u.clone();
                w.push(s);
                w.extend(u.iter().rev().map(|&l| -l));
                moves.insert(reduce_letters(&w));
            }
        }
    }
    let mut out: Vec<Vec<i32>> = moves.into_iter().collect();
    out.sort();
    out
}

/// Bounded brute-force spelling search: breadth-first over products of
/// conjugated generators (conjugators of length ≤ `conj_len`), pruning
/// intermediate words longer than `len_cap`, to depth `max_depth`, with a
/// hard state budget. Returns the least number of factors reaching `g` when
/// the search finds it within its bounds.
pub fn bounded_conjugator_search(
    g: &Word,
    conj_len: usize,
    len_cap: usize,
    max_depth: u32,
) -> Option<u32> {
    let dists =
        bounded_conjugator_distances(g.n, conj_len, len_cap, max_depth, Some(&g.letters));
    dists.get(&g.letters).copied()
}

/// Upgrades a spelling result with independent search confirmation: when the
/// brute-force distance over the bounded conjugate family agrees with the
/// deletion upper bound the result is marked exact; a shorter spelling found
/// by the search lowers the upper bound instead.
pub fn confirm_with_search(g: &Word, result: SpellingResult, conj_len: usize) -> SpellingResult {
    if result.exact {
        return result;
    }
    let g = g.cyclically_reduced();
    match bounded_conjugator_search(&g, conj_len, g.len() + 2, result.upper) {
        Some(v) if v == result.upper => SpellingResult { exact: true, ..result },
        Some(v) if v < result.upper => SpellingResult {
            lower: result.lower,
            upper: v,
            exact: v == result.lower,
            witness: None,
        },
        _ => result,
    }
}

/// Hard cap on explored states for targeted searches.
const SEARCH_STATE_BUDGET: usize = 300_000;

/// Distances from the identity to every reduced word of length ≤ `len_cap`
/// reachable within `max_depth` right-multiplications by conjugated
/// generators (conjugators of length ≤ `conj_len`). When `target` is given
/// the search stops as soon as it is settled and enforces a state budget;
/// without a target the ball is enumerated exhaustively.
pub fn bounded_conjugator_distances(
    n: usize,
    conj_len: usize,
    len_cap: usize,
    max_depth: u32,
    target: Option<&[i32]>,
) -> HashMap<Vec<i32>, u32> {
    let moves = conjugated_generator_moves(n, conj_len);
    let mut dist: HashMap<Vec<i32>, u32> = HashMap::new();
    let mut queue: VecDeque<Vec<i32>> = VecDeque::new();
    dist.insert(Vec::new(), 0);
    queue.push_back(Vec::new());
    while let Some(w) = queue.pop_front() {
        let d = dist[&w];
        if d >= max_depth {
            continue;
        }
        if target.is_some_and(|t| t == w.as_slice()) {
            break;
        }
        if target.is_some() && dist.len() > SEARCH_STATE_BUDGET {
            break;
        }
        for m in &moves {
            let mut cat = w.clone();
            cat.extend_from_slice(m);
            let next = reduce_letters(&cat);
            if next.len() > len_cap || dist.contains_key(&next) {
                continue;
            }
            dist.insert(next.clone(), d + 1);
            queue.push_back(next);
        }
    }
    dist
}

/// The Δ offset of a nonconformal reflection-symmetric prism class: the
/// excess of the extreme wrapping number over its like-signed neighbors and
/// χ, floored at zero. Conformal classes return (0, true).
///
/// `adjacency[k]` lists the octants sharing an arc with octant `k`
/// (use [`prism_octant_adjacency`]); each octant must have exactly 3.
pub fn delta(rs: &ReflSymClass, adjacency: &[[usize; 3]; 8]) -> (i32, bool) {
    let w = &rs.octant_wrapping;
    let has_pos = w.iter().any(|&x| x > 0);
    let has_neg = w.iter().any(|&x| x < 0);
    if !(has_pos && has_neg) {
        return (0, true);
    }
    let chi = rs.chi as i32;
    // Sector of largest positive wrapping number (smallest index on ties).
    let sigma_plus = (0..8).max_by_key(|&k| (w[k], -(k as i32))).unwrap();
    let w_plus = w[sigma_plus];
    let pos_neighbor_sum: i32 = adjacency[sigma_plus]
        .iter()
        .map(|&k| if w[k] > 0 { w[k] } else { 0 })
        .sum();
    let term_plus = w_plus - pos_neighbor_sum - chi;
    // Sector of largest-magnitude negative wrapping number.
    let sigma_minus = (0..8).max_by_key(|&k| (-w[k], -(k as i32))).unwrap();
    let w_minus = w[sigma_minus];
    let neg_neighbor_sum: i32 = adjacency[sigma_minus]
        .iter()
        .map(|&k| if w[k] < 0 { -w[k] } else { 0 })
        .sum();
    let term_minus = -w_minus - neg_neighbor_sum - chi;
    (term_plus.max(term_minus).max(0), false)
}

/// The improved lower bound for reflection-symmetric classes:
/// `4π (Σ|w| + 2Δ) Lz`. For conformal classes Δ = 0 and this reduces to the
/// minimal-connection bound `4π Σ|w| Lz`.
pub fn improved_lower_bound(rs: &ReflSymClass) -> f64 {
    let (d, _) = delta(rs, &prism_octant_adjacency());
    let total = rs.total_abs_wrapping() as f64 + 2.0 * d as f64;
    4.0 * std::f64::consts::PI * total * rs.dims.2
}

/// Lower bound on the total absolute degree of a disk-to-sphere map with the
/// given boundary class: |d₀| plus the least spelling length of
/// `boundary · g₁ ⋯ g_{r+|d₀|} · h₁ ⋯ h_r` over r ≤ `r_max`, with the g's
/// conjugates of `c0` and the h's conjugates of `c0⁻¹` (conjugators of
/// length ≤ `conj_len`). Certified only under the stated search bounds; the
/// spelling-length lower bound is used for each candidate product.
pub fn sphere_spelling_bound(
    boundary: &Word,
    c0: &Word,
    d0: i32,
    r_max: u32,
    conj_len: usize,
) -> Result<u32, FreeGroupError> {
    if boundary.n != c0.n {
        return Err(FreeGroupError::InvalidInput(
            "boundary and c0 use different generator counts".into(),
        ));
    }
    let n = boundary.n;
    // Intermediate products longer than this are discarded; together with
    // the layer budget below this is part of the certified search bounds.
    let len_cap = boundary.len().max(c0.len()) + 2 * conj_len + 2;
    const LAYER_BUDGET: usize = 20_000;
    let trim = |layer: HashSet<Vec<i32>>| -> Vec<Vec<i32>> {
        let mut v: Vec<Vec<i32>> = layer.into_iter().collect();
        v.sort_by(|a, b| (a.len(), a.as_slice()).cmp(&(b.len(), b.as_slice())));
        v.truncate(LAYER_BUDGET);
        v
    };

    // Conjugates of c0 and c0⁻¹ by words of length ≤ conj_len.
    let mut conjugators: Vec<Word> = vec![Word::identity(n)];
    {
        let mut frontier = vec![Word::identity(n)];
        for _ in 0..conj_len {
            let mut next = Vec::new();
            for u in &frontier {
                for j in 1..=n as i32 {
                    for s in [j, -j] {
                        if u.letters.last().is_some_and(|&l| l == -s) {
                            continue;
                        }
                        let mut v = u.letters.clone();
                        v.push(s);
                        let w = Word { letters: v, n };
                        next.push(w.clone());
                        conjugators.push(w);
                    }
                }
            }
            frontier = next;
        }
    }
    let g_factors: Vec<Word> = {
        let mut set = HashSet::new();
        for u in &conjugators {
            set.insert(c0.conjugate_by(u)?.letters);
        }
        let mut v: Vec<Vec<i32>> = set.into_iter().collect();
        v.sort();
        v.into_iter().map(|letters| Word { letters, n }).collect()
    };
    let c0_inv = c0.invert();
    let h_factors: Vec<Word> = {
        let mut set = HashSet::new();
        for u in &conjugators {
            set.insert(c0_inv.conjugate_by(u)?.letters);
        }
        let mut v: Vec<Vec<i32>> = set.into_iter().collect();
        v.sort();
        v.into_iter().map(|letters| Word { letters, n }).collect()
    };

    let mut best: Option<u32> = None;
    for r in 0..=r_max {
        let n_g = r as usize + d0.unsigned_abs() as usize;
        let n_h = r as usize;
        // Layered product expansion with deduplication: the g factors first,
        // then the h's (the order of the slots is fixed by the bound's form).
        let mut layer: Vec<Vec<i32>> = vec![boundary.letters.clone()];
        let factors_for = |slot: usize| if slot < n_g { &g_factors } else { &h_factors };
        for slot in 0..(n_g + n_h) {
            let mut next = HashSet::new();
            for w in &layer {
                for f in factors_for(slot) {
                    let mut cat = w.clone();
                    cat.extend_from_slice(&f.letters);
                    let red = reduce_letters(&cat);
                    if red.len() <= len_cap {
                        next.insert(red);
                    }
                }
            }
            layer = trim(next);
        }
        for letters in layer {
            let w = Word { letters, n };
            // The certified bound uses the spelling-length lower bound.
            let value = spelling_lower_bound(&w.cyclically_reduced());
            if best.is_none_or(|b| value < b) {
                best = Some(value);
            }
        }
        if best == Some(0) {
            break;
        }
    }
    Ok(d0.unsigned_abs() + best.unwrap_or(0))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(letters: &[i32]) -> Word {
        Word::from_letters(2, letters).unwrap()
    }

    #[test]
    fn reduction_and_group_ops() {
        assert!(w(&[1, -1]).is_empty());
        assert_eq!(w(&[1, 2]).multiply(&w(&[-2, 2])).unwrap(), w(&[1, 2]));
        assert_eq!(w(&[1, 2]).multiply(&w(&[-2, -1])).unwrap(), Word::identity(2));
        // multiply(c1 c2, c2⁻¹ c3) with 3 generators → c1 c3.
        let a = Word::from_letters(3, &[1, 2]).unwrap();
        let b = Word::from_letters(3, &[-2, 3]).unwrap();
        assert_eq!(a.multiply(&b).unwrap().letters(), &[1, 3]);
        // conjugate(c2 by c1) = c1 c2 c1⁻¹.
        let c = w(&[2]).conjugate_by(&w(&[1])).unwrap();
        assert_eq!(c.letters(), &[1, 2, -1]);
        // Inverse reverses and negates.
        assert_eq!(w(&[1, 2, -1]).invert().letters(), &[1, -2, -1]);
        // Out-of-range letters rejected.
        assert!(Word::from_letters(2, &[3]).is_err());
        assert!(Word::from_letters(2, &[0]).is_err());
    }

    #[test]
    fn abelianized_length_examples() {
        assert_eq!(abelianized_length(&w(&[1, 2, -1, -2])), 0);
        assert_eq!(abelianized_length(&Word::identity(2)), 0);
        assert_eq!(abelianized_length(&w(&[1, 1, 1, -2])), 4);
    }

    #[test]
    fn commutator_spelling_length_is_two() {
        let r = spelling_length(&w(&[1, 2, -1, -2]), 10);
        assert_eq!(r.lower, 2);
        assert_eq!(r.upper, 2);
        assert!(r.exact);
        assert_eq!(r.witness.as_ref().unwrap().len(), 2);
    }

    #[test]
    fn identity_spelling_length_is_zero() {
        let r = spelling_length(&Word::identity(2), 10);
        assert_eq!((r.lower, r.upper, r.exact), (0, 0, true));
    }

    #[test]
    fn single_generator_spelling_length_is_one() {
        let r = spelling_length(&w(&[2]), 10);
        assert_eq!((r.lower, r.upper, r.exact), (1, 1, true));
    }

    #[test]
    fn spelling_length_bounds_ordering() {
        // Λ upper ≥ Λ lower ≥ Λ̄ on a deterministic batch of words.
        let mut s = 0xabcdefu64;
        let mut lcg = move || {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (s >> 33) as usize
        };
        for _ in 0..300 {
            let len = 1 + lcg() % 8;
            let letters: Vec<i32> = (0..len)
                .map(|_| {
                    let g = 1 + (lcg() % 2) as i32;
                    if lcg() % 2 == 0 {
                        g
                    } else {
                        -g
                    }
                })
                .collect();
            let word = w(&letters);
            if word.is_empty() {
                continue;
            }
            let r = spelling_length(&word, 12);
            assert!(r.upper >= r.lower);
            assert!(r.lower >= abelianized_length(&word));
            assert_eq!(r.exact, r.lower == r.upper || r.exact);
            // Parity: Λ ≡ word length mod 2 holds for the deletion bound.
            assert_eq!(r.upper % 2, (word.len() % 2) as u32);
        }
    }

    #[test]
    fn spelling_length_is_conjugation_invariant() {
        let g = w(&[1, 2, -1, -2]);
        let base = spelling_length(&g, 10);
        for h in [w(&[1]), w(&[2, 1]), w(&[-2, 1, 1]), w(&[1, 2, 1])] {
            let conj = g.conjugate_by(&h).unwrap();
            let r = spelling_length(&conj, 12);
            assert_eq!((r.lower, r.upper), (base.lower, base.upper), "conjugator {h:?}");
        }
    }

    #[test]
    fn deletion_bfs_matches_bounded_brute_force_on_short_words() {
        // All 2-generator reduced words of length ≤ 5 (the full length-6
        // sweep runs in the acceptance suite).
        let dists = bounded_conjugator_distances(2, 4, 10, 6, None);
        let mut words: Vec<Vec<i32>> = vec![Vec::new()];
        for _ in 0..5 {
            let mut next = Vec::new();
            for u in &words {
                for j in [1i32, -1, 2, -2] {
                    if u.last().is_some_and(|&l| l == -j) {
                        continue;
                    }
                    let mut v = u.clone();
                    v.push(j);
                    next.push(v);
                }
            }
            words.extend(next.clone());
            words = {
                let mut seen = HashSet::new();
                words
                    .drain(..)
                    .filter(|wd| seen.insert(wd.clone()))
                    .collect()
            };
        }
        let mut checked = 0;
        for letters in &words {
            let word = w(letters);
            if word.letters() != letters.as_slice() {
                continue; // only reduced words
            }
            let del = spelling_length(&word, 8);
            if let Some(&bf) = dists.get(letters) {
                assert_eq!(del.upper, bf, "word {letters:?}");
                checked += 1;
            }
        }
        assert!(checked > 300, "only {checked} words checked");
    }

    #[test]
    fn delta_examples() {
        let dims = (1.0, 1.0, 1.0);
        let adj = prism_octant_adjacency();
        // Conformal (all ≤ 0) → 0 with flag.
        let rs = ReflSymClass::h1(dims);
        assert_eq!(delta(&rs, &adj), (0, true));
        // Isolated +1 (no positive neighbors), χ=0, symmetric negative side
        // far away: Δ = 1.
        // Octant 0 = (+,+,+) has neighbors 4, 2, 1; keep them non-positive.
        let rs = ReflSymClass::new([1, 0, 0, -1, 0, 0, 0, 0], 0, dims).unwrap();
        assert_eq!(delta(&rs, &adj), (1, false));
        // W⁺ = 2 with adjacent positives summing to 2 and χ = 0 on both
        // sides: Δ = 0. Octant 0 neighbors {4,2,1}; octant 5 neighbors {1,7,4}.
        let rs = ReflSymClass::new([2, 1, 1, 0, -1, -2, 0, -1], 0, dims).unwrap();
        let (d, conformal) = delta(&rs, &adj);
        assert!(!conformal);
        assert_eq!(d, 0);
    }

    #[test]
    fn improved_bound_reduces_to_connection_bound_when_delta_zero() {
        let dims = (1.0, 1.0, 1.0);
        let rs = ReflSymClass::h1(dims);
        let e = improved_lower_bound(&rs);
        assert!((e - 4.0 * std::f64::consts::PI * 3.0).abs() < 1e-12);
        // Δ=1, Σ|w| = 3, Lz = 1 → 4π(3+2) = 20π.
        let rs = ReflSymClass::new([1, 0, 0, -1, 0, -1, 0, 0], 0, dims).unwrap();
        let adj = prism_octant_adjacency();
        assert_eq!(delta(&rs, &adj).0, 1);
        assert!((improved_lower_bound(&rs) - 20.0 * std::f64::consts::PI).abs() < 1e-12);
        // Zero class → 0.
        let rs = ReflSymClass::new([0; 8], 0, dims).unwrap();
        assert_eq!(improved_lower_bound(&rs), 0.0);
    }

    #[test]
    fn sphere_bound_examples() {
        let n = 2;
        let e = Word::identity(n);
        let c0 = Word::from_letters(n, &[1]).unwrap();
        // Trivial boundary, d0 = 0 → 0.
        assert_eq!(sphere_spelling_bound(&e, &c0, 0, 2, 3).unwrap(), 0);
        // d0 = 1, trivial boundary → ≥ 1 from the |d0| term (the minimum
        // itself is 0: c0 · (conjugate of c0⁻¹) cancels... it needs one g
        // factor g₁ ~ c0, and Λ(g₁) = 1, so the bound is 1 + ... ).
        let b = sphere_spelling_bound(&e, &c0, 1, 2, 3).unwrap();
        assert!(b >= 1);
        // boundary = c0, d0 = 0: r = 1 gives boundary·g·h with g = c0⁻¹-ish
        // conjugates; the searched minimum is 1.
        let b = sphere_spelling_bound(&c0, &c0, 0, 2, 3).unwrap();
        assert_eq!(b, 1);
    }
}
