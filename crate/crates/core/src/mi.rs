//! Histogram mutual information over discretized expression profiles.
//!
//! Profiles are binned with equal-width edges, entropies use the plug-in
//! estimator over empirical frequencies, and MI(x,y) = H(x) + H(y) - H(x,y).
//! `all_pairs_mi` fans the upper triangle out across threads; results are
//! bit-identical for any worker count because every pair is computed
//! independently and the final ordering is a total sort.

use rayon::prelude::*;

use crate::error::{Error, Result};

/// Logarithm base for entropy values. Bits (base 2) is the default; the
/// choice is echoed into run metadata by the CLI.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum LogBase {
    #[default]
    Bits,
    Nats,
}

impl LogBase {
    #[inline]
    fn log(self, x: f64) -> f64 {
        match self {
            LogBase::Bits => x.log2(),
            LogBase::Nats => x.ln(),
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            LogBase::Bits => "2",
            LogBase::Nats => "e",
        }
    }
}

/// A gene's expression profile mapped to bin indices.
#[derive(Debug, Clone)]
pub struct DiscretizedProfile {
    pub gene_id: String,
    /// One bin index per sample, each in `[0, bin_count)`.
    pub bins: Vec<u16>,
    pub bin_count: u16,
    /// `bin_count + 1` ascending edges.
    pub bin_edges: Vec<f64>,
}

impl DiscretizedProfile {
    /// Wrap already-discrete data. Edges are synthesized unit intervals.
    pub fn from_bins(gene_id: &str, bins: Vec<u16>, bin_count: u16) -> Self {
        assert!(bin_count >= 1);
        assert!(
            bins.iter().all(|&b| b < bin_count),
            "bin index out of range"
        );
        let bin_edges = (0..=bin_count).map(f64::from).collect();
        Self {
            gene_id: gene_id.to_string(),
            bins,
            bin_count,
            bin_edges,
        }
    }

    pub fn len(&self) -> usize {
        self.bins.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bins.is_empty()
    }

    /// True when the source profile was constant (single forced bin).
    pub fn is_constant(&self) -> bool {
        self.bin_count == 1
    }
}

/// Sturges' rule: ceil(log2 M) + 1 bins for M samples.
pub fn sturges_bins(n_samples: usize) -> u16 {
    assert!(n_samples >= 1);
    (n_samples as f64).log2().ceil() as u16 + 1
}

/// Split [min, max] into `bins` equal-width intervals and map each value to
/// its interval, with the maximum value landing in the top bin. A constant
/// profile collapses to a single bin regardless of the requested count.
pub fn discretize_equal_width(gene_id: &str, values: &[f64], bins: u16) -> DiscretizedProfile {
    assert!(bins >= 1, "bin count must be at least 1");
    assert!(!values.is_empty(), "cannot discretize an empty profile");
    assert!(
        values.iter().all(|v| v.is_finite()),
        "values must be finite"
    );

    let lo = values.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if lo == hi {
        return DiscretizedProfile {
            gene_id: gene_id.to_string(),
            bins: vec![0; values.len()],
            bin_count: 1,
            bin_edges: vec![lo - 0.5, lo + 0.5],
        };
    }

    let width = (hi - lo) / f64::from(bins);
    let top = bins - 1;
    let assigned = values
        .iter()
        .map(|&v| (((v - lo) / width) as u16).min(top))
        .collect();
    let mut bin_edges: Vec<f64> = (0..=bins).map(|k| lo + f64::from(k) * width).collect();
    bin_edges[bins as usize] = hi;
    DiscretizedProfile {
        gene_id: gene_id.to_string(),
        bins: assigned,
        bin_count: bins,
        bin_edges,
    }
}

#[inline]
fn entropy_from_counts(counts: &[u32], total: usize, base: LogBase) -> f64 {
    let n = total as f64;
    let mut h = 0.0;
    for &c in counts {
        if c > 0 {
            let p = c as f64 / n;
            h -= p * base.log(p);
        }
    }
    h
}

/// Plug-in entropy of a profile's empirical bin distribution.
pub fn entropy(d: &DiscretizedProfile, base: LogBase) -> f64 {
    let mut counts = vec![0u32; d.bin_count as usize];
    for &b in &d.bins {
        counts[b as usize] += 1;
    }
    entropy_from_counts(&counts, d.len(), base)
}

fn check_same_len(dx: &DiscretizedProfile, dy: &DiscretizedProfile) -> Result<()> {
    if dx.len() != dy.len() {
        return Err(Error::Dimension(format!(
            "profiles have {} and {} samples",
            dx.len(),
            dy.len()
        )));
    }
    Ok(())
}

fn joint_entropy_into(
    dx: &DiscretizedProfile,
    dy: &DiscretizedProfile,
    base: LogBase,
    counts: &mut Vec<u32>,
) -> f64 {
    // Accumulate cells in an operand-order-independent layout so that
    // swapping the arguments reproduces the sum bit for bit.
    let (dx, dy) = if (dx.bin_count, &dx.bins) <= (dy.bin_count, &dy.bins) {
        (dx, dy)
    } else {
        (dy, dx)
    };
    let by = dy.bin_count as usize;
    counts.clear();
    counts.resize(dx.bin_count as usize * by, 0);
    for (&a, &b) in dx.bins.iter().zip(&dy.bins) {
        counts[a as usize * by + b as usize] += 1;
    }
    entropy_from_counts(counts, dx.len(), base)
}

/// Plug-in entropy of the joint bin distribution of two profiles.
pub fn joint_entropy(
    dx: &DiscretizedProfile,
    dy: &DiscretizedProfile,
    base: LogBase,
) -> Result<f64> {
    check_same_len(dx, dy)?;
    let mut counts = Vec::new();
    Ok(joint_entropy_into(dx, dy, base, &mut counts))
}

#[inline]
fn clamp_tiny_negative(mi: f64) -> f64 {
    // MI is non-negative; cancellation in H(x)+H(y)-H(x,y) can leave a tiny
    // negative residue.
    if mi > -1e-12 && mi < 0.0 {
        0.0
    } else {
        mi
    }
}

/// MI(x, y) = H(x) + H(y) - H(x, y).
pub fn mutual_information(
    dx: &DiscretizedProfile,
    dy: &DiscretizedProfile,
    base: LogBase,
) -> Result<f64> {
    check_same_len(dx, dy)?;
    let mut counts = Vec::new();
    let h_xy = joint_entropy_into(dx, dy, base, &mut counts);
    Ok(clamp_tiny_negative(
        entropy(dx, base) + entropy(dy, base) - h_xy,
    ))
}

/// One scored unordered gene pair; `i < j` index into the profile list.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MiPair {
    pub i: u32,
    pub j: u32,
    pub mi: f64,
}

/// All unordered pairs, sorted by MI descending with ascending (i, j) as the
/// tie-breaker. The ordering is total, so output is deterministic.
#[derive(Debug, Clone)]
pub struct MiPairList {
    pub entries: Vec<MiPair>,
    pub n_profiles: usize,
}

impl MiPairList {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

fn pair_order(a: &MiPair, b: &MiPair) -> std::cmp::Ordering {
    b.mi.total_cmp(&a.mi)
        .then_with(|| (a.i, a.j).cmp(&(b.i, b.j)))
}

/// Score every unordered pair of profiles.
///
/// Marginal entropies are computed once per profile; the joint term is
/// evaluated per pair across a parallel iterator over rows of the upper
/// triangle.
pub fn all_pairs_mi(profiles: &[DiscretizedProfile], base: LogBase) -> Result<MiPairList> {
    let g = profiles.len();
    if g < 2 {
        return Err(Error::Domain(format!(
            "need at least 2 profiles to score pairs, got {g}"
        )));
    }
    let m = profiles[0].len();
    for p in profiles {
        if p.len() != m {
            return Err(Error::Dimension(format!(
                "profile {:?} has {} samples, expected {m}",
                p.gene_id,
                p.len()
            )));
        }
    }

    let marginal: Vec<f64> = profiles.par_iter().map(|p| entropy(p, base)).collect();

    let mut entries: Vec<MiPair> = (0..g)
        .into_par_iter()
        .flat_map_iter(|i| {
            let mut counts = Vec::new();
            let marginal = &marginal;
            (i + 1..g).map(move |j| {
                let h_xy = joint_entropy_into(&profiles[i], &profiles[j], base, &mut counts);
                MiPair {
                    i: i as u32,
                    j: j as u32,
                    mi: clamp_tiny_negative(marginal[i] + marginal[j] - h_xy),
                }
            })
        })
        .collect();

    entries.sort_unstable_by(pair_order);
    Ok(MiPairList {
        entries,
        n_profiles: g,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::test_support::mi_kl_oracle;
    use proptest::prelude::*;
    use rand_chacha::rand_core::{RngCore, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    const B: LogBase = LogBase::Bits;

    fn prof(bins: &[u16], bin_count: u16) -> DiscretizedProfile {
        DiscretizedProfile::from_bins("p", bins.to_vec(), bin_count)
    }

    #[test]
    fn equal_width_midpoint_split() {
        let d = discretize_equal_width("g", &[0.0, 1.0, 2.0, 3.0], 2);
        assert_eq!(d.bins, vec![0, 0, 1, 1]);
        assert_eq!(d.bin_count, 2);
        assert_eq!(d.bin_edges, vec![0.0, 1.5, 3.0]);
    }

    #[test]
    fn constant_profile_collapses_to_one_bin() {
        let d = discretize_equal_width("g", &[5.0, 5.0, 5.0], 4);
        assert_eq!(d.bins, vec![0, 0, 0]);
        assert_eq!(d.bin_count, 1);
        assert!(d.is_constant());
    }

    #[test]
    fn maximum_lands_in_top_bin() {
        let d = discretize_equal_width("g", &[0.0, 0.9, 1.0], 2);
        assert_eq!(d.bins, vec![0, 1, 1]);
        assert_eq!(*d.bin_edges.last().unwrap(), 1.0);
    }

    #[test]
    fn sturges_defaults() {
        assert_eq!(sturges_bins(20), 6);
        assert_eq!(sturges_bins(4), 3);
        assert_eq!(sturges_bins(1), 1);
        assert_eq!(sturges_bins(10000), 15);
    }

    #[test]
    fn entropy_uniform_four_bins() {
        let h = entropy(&prof(&[0, 1, 2, 3], 4), B);
        assert_eq!(h, 2.0);
    }

    #[test]
    fn entropy_constant_is_zero() {
        let h = entropy(&prof(&[0, 0, 0], 1), B);
        assert_eq!(h, 0.0);
        assert_eq!(h.to_bits(), 0.0f64.to_bits()); // positive zero
    }

    #[test]
    fn entropy_one_third_two_thirds() {
        // -(1/3) log2(1/3) - (2/3) log2(2/3) = log2(3) - 2/3
        let h = entropy(&prof(&[0, 0, 1, 1, 1, 1], 2), B);
        let expect = 3.0f64.log2() - 2.0 / 3.0;
        assert!((h - expect).abs() < 1e-12);
        assert!((h - 0.9182958340544896).abs() < 1e-12);
    }

    #[test]
    fn entropy_in_nats() {
        let h = entropy(&prof(&[0, 1], 2), LogBase::Nats);
        assert!((h - std::f64::consts::LN_2).abs() < 1e-15);
    }

    #[test]
    fn joint_entropy_uniform_grid() {
        let x = prof(&[0, 0, 1, 1], 2);
        let y = prof(&[0, 1, 0, 1], 2);
        assert_eq!(joint_entropy(&x, &y, B).unwrap(), 2.0);
    }

    #[test]
    fn joint_entropy_of_identical_profiles_is_marginal() {
        let x = prof(&[0, 0, 1, 1], 2);
        assert_eq!(joint_entropy(&x, &x, B).unwrap(), entropy(&x, B));
        assert_eq!(joint_entropy(&x, &x, B).unwrap(), 1.0);
    }

    #[test]
    fn joint_entropy_length_mismatch() {
        let x = prof(&[0, 1], 2);
        let y = prof(&[0, 1, 0], 2);
        assert!(matches!(joint_entropy(&x, &y, B), Err(Error::Dimension(_))));
    }

    #[test]
    fn independent_profiles_have_zero_mi() {
        let x = prof(&[0, 0, 1, 1], 2);
        let y = prof(&[0, 1, 0, 1], 2);
        assert_eq!(mutual_information(&x, &y, B).unwrap(), 0.0);
    }

    #[test]
    fn self_information_equals_entropy() {
        let x = prof(&[0, 0, 1, 2, 1, 0], 3);
        let mi = mutual_information(&x, &x, B).unwrap();
        assert!((mi - entropy(&x, B)).abs() < 1e-12);
    }

    #[test]
    fn deterministic_relabeling_preserves_information() {
        let x = prof(&[0, 0, 1, 1], 2);
        let y = prof(&[1, 1, 0, 0], 2);
        assert_eq!(mutual_information(&x, &y, B).unwrap(), 1.0);
    }

    #[test]
    fn all_pairs_counts() {
        let ps: Vec<_> = [[0u16, 1, 0, 1], [0, 0, 1, 1], [1, 0, 1, 0]]
            .iter()
            .map(|b| prof(b, 2))
            .collect();
        let list = all_pairs_mi(&ps, B).unwrap();
        assert_eq!(list.len(), 3);
        assert_eq!(list.n_profiles, 3);
    }

    #[test]
    fn pair_count_for_101_profiles() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let ps: Vec<_> = (0..101)
            .map(|i| {
                let bins: Vec<u16> = (0..20).map(|_| (rng.next_u64() % 4) as u16).collect();
                DiscretizedProfile::from_bins(&format!("g{i}"), bins, 4)
            })
            .collect();
        let list = all_pairs_mi(&ps, B).unwrap();
        assert_eq!(list.len(), 5050);
    }

    #[test]
    fn duplicated_profile_ranks_first() {
        let x = [0u16, 1, 2, 0, 1, 2, 0, 1];
        let other = [0u16, 0, 0, 1, 1, 1, 0, 0];
        let ps = vec![
            DiscretizedProfile::from_bins("a", x.to_vec(), 3),
            DiscretizedProfile::from_bins("a_copy", x.to_vec(), 3),
            DiscretizedProfile::from_bins("b", other.to_vec(), 2),
        ];
        let list = all_pairs_mi(&ps, B).unwrap();
        let top = list.entries[0];
        assert_eq!((top.i, top.j), (0, 1));
        let h = entropy(&ps[0], B);
        assert!((top.mi - h).abs() < 1e-12);
    }

    #[test]
    fn too_few_profiles_rejected() {
        let p = vec![prof(&[0, 1], 2)];
        assert!(matches!(all_pairs_mi(&p, B), Err(Error::Domain(_))));
    }

    #[test]
    fn sort_is_total_and_deterministic() {
        // Two pairs tie exactly (identical structure); index order decides.
        let ps = vec![
            prof(&[0, 0, 1, 1], 2),
            prof(&[0, 1, 0, 1], 2),
            prof(&[0, 1, 1, 0], 2),
        ];
        let list = all_pairs_mi(&ps, B).unwrap();
        let keys: Vec<(u32, u32)> = list.entries.iter().map(|e| (e.i, e.j)).collect();
        assert_eq!(keys, vec![(0, 1), (0, 2), (1, 2)]);
    }

    #[test]
    fn constant_profile_scores_zero_against_everything() {
        let c = prof(&[0, 0, 0, 0], 1);
        let x = prof(&[0, 1, 2, 3], 4);
        assert_eq!(mutual_information(&c, &x, B).unwrap(), 0.0);
        assert_eq!(mutual_information(&x, &c, B).unwrap(), 0.0);
    }

    /// Every ordered pair of length-4 vectors over {0,1,2}: the H-sum route
    /// must match the direct joint/marginal-ratio oracle.
    #[test]
    fn exhaustive_kl_oracle_equivalence() {
        let mut vectors = Vec::new();
        for a in 0u16..3 {
            for b in 0u16..3 {
                for c in 0u16..3 {
                    for d in 0u16..3 {
                        vectors.push(vec![a, b, c, d]);
                    }
                }
            }
        }
        assert_eq!(vectors.len(), 81);
        for x in &vectors {
            let dx = DiscretizedProfile::from_bins("x", x.clone(), 3);
            for y in &vectors {
                let dy = DiscretizedProfile::from_bins("y", y.clone(), 3);
                let via_entropies = mutual_information(&dx, &dy, B).unwrap();
                let via_kl = mi_kl_oracle(x, y);
                assert!(
                    (via_entropies - via_kl).abs() < 1e-12,
                    "x={x:?} y={y:?}: {via_entropies} vs {via_kl}"
                );
            }
        }
    }

    #[test]
    fn independent_uniform_profiles_stay_near_zero() {
        let mut rng = ChaCha8Rng::seed_from_u64(991);
        let m = 10_000;
        let bins = 10u16;
        let x: Vec<u16> = (0..m)
            .map(|_| (rng.next_u64() % bins as u64) as u16)
            .collect();
        let y: Vec<u16> = (0..m)
            .map(|_| (rng.next_u64() % bins as u64) as u16)
            .collect();
        let dx = DiscretizedProfile::from_bins("x", x, bins);
        let dy = DiscretizedProfile::from_bins("y", y, bins);
        let mi = mutual_information(&dx, &dy, B).unwrap();
        assert!(mi <= 0.01, "independent uniform MI = {mi}");
    }

    #[test]
    fn self_information_over_many_random_profiles() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..1000 {
            let b = 2 + (rng.next_u64() % 6) as u16;
            let m = 4 + (rng.next_u64() % 30) as usize;
            let bins: Vec<u16> = (0..m).map(|_| (rng.next_u64() % b as u64) as u16).collect();
            let d = DiscretizedProfile::from_bins("g", bins, b);
            let mi = mutual_information(&d, &d, B).unwrap();
            assert!((mi - entropy(&d, B)).abs() < 1e-12);
        }
    }

    fn arb_profile_pair() -> impl Strategy<Value = (DiscretizedProfile, DiscretizedProfile)> {
        (2usize..40, 1u16..6, 1u16..6).prop_flat_map(|(m, bx, by)| {
            (
                prop::collection::vec(0..bx, m),
                prop::collection::vec(0..by, m),
                Just(bx),
                Just(by),
            )
                .prop_map(move |(x, y, bx, by)| {
                    (
                        DiscretizedProfile::from_bins("x", x, bx),
                        DiscretizedProfile::from_bins("y", y, by),
                    )
                })
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(256))]

        #[test]
        fn symmetry_is_bit_identical((dx, dy) in arb_profile_pair()) {
            let a = mutual_information(&dx, &dy, B).unwrap();
            let b = mutual_information(&dy, &dx, B).unwrap();
            prop_assert_eq!(a.to_bits(), b.to_bits());
        }

        #[test]
        fn entropy_and_mi_bounds((dx, dy) in arb_profile_pair()) {
            let hx = entropy(&dx, B);
            let hy = entropy(&dy, B);
            let hxy = joint_entropy(&dx, &dy, B).unwrap();
            let mi = mutual_information(&dx, &dy, B).unwrap();
            prop_assert!(mi >= 0.0);
            prop_assert!(mi <= hx.min(hy) + 1e-12);
            prop_assert!(hxy <= hx + hy + 1e-12);
            prop_assert!(hxy >= hx.max(hy) - 1e-12);
        }

        // Permuting bin labels of either profile leaves MI unchanged.
        #[test]
        fn relabeling_invariance((dx, dy) in arb_profile_pair(), salt in 0u16..1000) {
            let base = mutual_information(&dx, &dy, B).unwrap();
            let relabel = |d: &DiscretizedProfile| {
                let b = d.bin_count;
                let bins = d.bins.iter().map(|&v| (v + salt % b) % b).collect();
                DiscretizedProfile::from_bins(&d.gene_id, bins, b)
            };
            let rx = relabel(&dx);
            let mi_rx = mutual_information(&rx, &dy, B).unwrap();
            prop_assert!((base - mi_rx).abs() < 1e-12);
            let ry = relabel(&dy);
            let mi_ry = mutual_information(&dx, &ry, B).unwrap();
            prop_assert!((base - mi_ry).abs() < 1e-12);
        }
    }

    #[test]
    fn worker_count_does_not_change_bits() {
        let mut rng = ChaCha8Rng::seed_from_u64(29);
        let ps: Vec<_> = (0..40)
            .map(|i| {
                let bins: Vec<u16> = (0..20).map(|_| (rng.next_u64() % 5) as u16).collect();
                DiscretizedProfile::from_bins(&format!("g{i}"), bins, 5)
            })
            .collect();
        let run = |threads: usize| {
            rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .unwrap()
                .install(|| all_pairs_mi(&ps, B).unwrap())
        };
        let one = run(1);
        let four = run(4);
        assert_eq!(one.len(), four.len());
        for (a, b) in one.entries.iter().zip(&four.entries) {
            assert_eq!((a.i, a.j), (b.i, b.j));
            assert_eq!(a.mi.to_bits(), b.mi.to_bits());
        }
    }
}
