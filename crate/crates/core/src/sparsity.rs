//! Supports of eigenvectors and the hitting-set view of sparse controllability.
//!
//! A real vector `b` supported inside `S` can make `(A, b)` controllable iff
//! `S` meets the support of every left eigenvector, so the sparsest input is
//! a minimum hitting set of the eigenvector supports.
//!
//! Indices are 0-based in the API; [`IndexSet`]'s `Display` and
//! [`IndexSet::one_based`] give the 1-based form used in files and reports.

use std::fmt;

use nalgebra::DVector;

use crate::error::{Error, Result};
use crate::numlin::{EigenStructure, C64};

/// Largest dimension accepted by [`min_hitting_set_exact`].
pub const EXACT_LIMIT: usize = 24;

/// Sorted, duplicate-free subset of `{0, …, n−1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IndexSet {
    n: usize,
    members: Vec<usize>,
}

impl IndexSet {
    pub fn new(n: usize, members: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut members: Vec<usize> = members.into_iter().collect();
        members.sort_unstable();
        members.dedup();
        if let Some(&m) = members.last() {
            if m >= n {
                return Err(Error::InvalidInput(format!(
                    "index {} out of range 1..={n}",
                    m + 1
                )));
            }
        }
        Ok(Self { n, members })
    }

    /// From 1-based indices, as written in files and on the command line.
    pub fn from_one_based(n: usize, members: &[usize]) -> Result<Self> {
        if members.contains(&0) {
            return Err(Error::InvalidInput("indices are 1-based; got 0".into()));
        }
        Self::new(n, members.iter().map(|m| m - 1))
    }

    pub fn empty(n: usize) -> Self {
        Self {
            n,
            members: Vec::new(),
        }
    }

    pub fn full(n: usize) -> Self {
        Self {
            n,
            members: (0..n).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.members.binary_search(&i).is_ok()
    }

    pub fn one_based(&self) -> Vec<usize> {
        self.members.iter().map(|m| m + 1).collect()
    }

    pub fn intersects(&self, other: &IndexSet) -> bool {
        self.members.iter().any(|&m| other.contains(m))
    }

    pub fn intersection(&self, other: &IndexSet) -> IndexSet {
        IndexSet {
            n: self.n,
            members: self
                .members
                .iter()
                .copied()
                .filter(|&m| other.contains(m))
                .collect(),
        }
    }

    pub fn union(&self, other: &IndexSet) -> IndexSet {
        let mut members = self.members.clone();
        members.extend_from_slice(&other.members);
        members.sort_unstable();
        members.dedup();
        IndexSet {
            n: self.n.max(other.n),
            members,
        }
    }

    pub fn is_subset(&self, other: &IndexSet) -> bool {
        self.members.iter().all(|&m| other.contains(m))
    }

    fn mask(&self) -> u64 {
        self.members.iter().fold(0u64, |acc, &m| acc | (1 << m))
    }

    fn from_mask(n: usize, mask: u64) -> Self {
        IndexSet {
            n,
            members: (0..n).filter(|&i| mask & (1 << i) != 0).collect(),
        }
    }
}

impl fmt::Display for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, m) in self.members.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", m + 1)?;
        }
        write!(f, "}}")
    }
}

/// Supports of the `n` canonical left eigenvectors, in eigenvalue order.
#[derive(Clone, Debug, PartialEq)]
pub struct SupportFamily {
    n: usize,
    supports: Vec<IndexSet>,
    tau_supp: f64,
    /// `dedup[j] = Some(i)` when eigenvector `j` is the conjugate of an earlier `i`.
    dedup: Vec<Option<usize>>,
}

impl SupportFamily {
    /// Family from explicit sets; every set must be nonempty and live in `{0..n−1}`.
    pub fn from_sets(n: usize, supports: Vec<IndexSet>, tau_supp: f64) -> Result<Self> {
        if supports.iter().any(|s| s.is_empty()) {
            return Err(Error::InvalidInput(
                "support family contains an empty set".into(),
            ));
        }
        if supports.iter().any(|s| s.n() != n) {
            return Err(Error::Dimension(
                "support set dimension differs from n".into(),
            ));
        }
        let dedup = vec![None; supports.len()];
        Ok(Self {
            n,
            supports,
            tau_supp,
            dedup,
        })
    }

    /// Convenience for tests and fixtures: 1-based index lists.
    pub fn from_one_based(n: usize, sets: &[&[usize]]) -> Result<Self> {
        let supports = sets
            .iter()
            .map(|s| IndexSet::from_one_based(n, s))
            .collect::<Result<Vec<_>>>()?;
        Self::from_sets(n, supports, crate::numlin::TAU_SUPP)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn supports(&self) -> &[IndexSet] {
        &self.supports
    }

    pub fn support(&self, i: usize) -> &IndexSet {
        &self.supports[i]
    }

    pub fn len(&self) -> usize {
        self.supports.len()
    }

    pub fn is_empty(&self) -> bool {
        self.supports.is_empty()
    }

    pub fn tau_supp(&self) -> f64 {
        self.tau_supp
    }

    pub fn dedup_map(&self) -> &[Option<usize>] {
        &self.dedup
    }

    /// Family with conjugate duplicates removed.
    pub fn deduplicated(&self) -> Vec<&IndexSet> {
        self.supports
            .iter()
            .zip(&self.dedup)
            .filter(|(_, d)| d.is_none())
            .map(|(s, _)| s)
            .collect()
    }
}

/// `{j : |v_j| > tau}`.
pub fn support(v: &DVector<C64>, tau_supp: f64) -> IndexSet {
    IndexSet {
        n: v.len(),
        members: v
            .iter()
            .enumerate()
            .filter(|(_, z)| z.norm() > tau_supp)
            .map(|(j, _)| j)
            .collect(),
    }
}

pub fn support_real(v: &[f64], tau_supp: f64) -> IndexSet {
    IndexSet {
        n: v.len(),
        members: v
            .iter()
            .enumerate()
            .filter(|(_, z)| z.abs() > tau_supp)
            .map(|(j, _)| j)
            .collect(),
    }
}

pub fn support_family(e: &EigenStructure) -> Result<SupportFamily> {
    e.require_distinct()?;
    let tau = e.tau_supp();
    let supports: Vec<IndexSet> = e
        .left_eigenvectors()
        .iter()
        .map(|x| support(x, tau))
        .collect();
    let mut dedup = vec![None; supports.len()];
    for &(i, j) in e.conj_pairs() {
        if supports[i] == supports[j] {
            dedup[j] = Some(i);
        }
    }
    Ok(SupportFamily {
        n: e.n(),
        supports,
        tau_supp: tau,
        dedup,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HitReport {
    pub hits: bool,
    /// Smallest index whose support misses the candidate set.
    pub witness: Option<usize>,
}

pub fn hits_all(f: &SupportFamily, s: &IndexSet) -> HitReport {
    match f.supports.iter().position(|sup| !sup.intersects(s)) {
        Some(i) => HitReport {
            hits: false,
            witness: Some(i),
        },
        None => HitReport {
            hits: true,
            witness: None,
        },
    }
}

pub fn min_hitting_set_exact(f: &SupportFamily) -> Result<IndexSet> {
    min_hitting_set_exact_with_limit(f, EXACT_LIMIT)
}

/// Minimum-cardinality hitting set; among minimizers the lexicographically
/// smallest sorted member list wins.
///
/// Candidates are enumerated as combinations in lexicographic order for each
/// cardinality in turn. A subtree is cut when some unhit set has no member
/// left to choose from, or when a greedy packing of pairwise disjoint unhit
/// sets already needs more picks than remain.
pub fn min_hitting_set_exact_with_limit(f: &SupportFamily, limit: usize) -> Result<IndexSet> {
    let n = f.n();
    if n > limit || n > 63 {
        return Err(Error::TooLarge { n, limit });
    }
    let mut masks: Vec<u64> = f.deduplicated().iter().map(|s| s.mask()).collect();
    masks.sort_unstable_by_key(|m| (m.count_ones(), *m));
    masks.dedup();
    // Supersets of another member are hit automatically.
    let masks: Vec<u64> = masks
        .iter()
        .enumerate()
        .filter(|&(k, &m)| !masks[..k].iter().any(|&s| s & m == s && s != m))
        .map(|(_, &m)| m)
        .collect();

    let mut search = ExactSearch { n, sets: &masks };
    for k in 0..=n {
        if let Some(mask) = search.descend(0, 0, k) {
            return Ok(IndexSet::from_mask(n, mask));
        }
    }
    unreachable!("the full index set hits every nonempty support")
}

struct ExactSearch<'a> {
    n: usize,
    sets: &'a [u64],
}

impl ExactSearch<'_> {
    fn descend(&mut self, next: usize, chosen: u64, left: usize) -> Option<u64> {
        let open: Vec<u64> = self
            .sets
            .iter()
            .copied()
            .filter(|&s| s & chosen == 0)
            .collect();
        if open.is_empty() {
            return Some(chosen);
        }
        if left == 0 || next >= self.n {
            return None;
        }
        let avail: u64 = !0u64 << next;
        if open.iter().any(|&s| s & avail == 0) {
            return None;
        }
        let mut used = 0u64;
        let mut packing = 0usize;
        for &s in &open {
            let s = s & avail;
            if s & used == 0 {
                used |= s;
                packing += 1;
            }
        }
        if packing > left {
            return None;
        }
        for e in next..self.n {
            if self.n - e < left {
                break;
            }
            if let Some(found) = self.descend(e + 1, chosen | (1 << e), left - 1) {
                return Some(found);
            }
        }
        None
    }
}

/// Frequency greedy: repeatedly take the index hitting the most unhit sets
/// (smallest index on ties).
pub fn min_hitting_set_greedy(f: &SupportFamily) -> IndexSet {
    let n = f.n();
    let mut open: Vec<&IndexSet> = f.deduplicated();
    let mut chosen = Vec::new();
    while !open.is_empty() {
        let mut counts = vec![0usize; n];
        for s in &open {
            for &m in s.members() {
                counts[m] += 1;
            }
        }
        let best = (0..n)
            .max_by(|&a, &b| counts[a].cmp(&counts[b]).then(b.cmp(&a)))
            .expect("n >= 1");
        if counts[best] == 0 {
            break;
        }
        chosen.push(best);
        open.retain(|s| !s.contains(best));
    }
    IndexSet::new(n, chosen).expect("indices in range")
}
