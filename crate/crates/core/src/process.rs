//! The static model `Y_d(n, p)` and the face-by-face process, with exact
//! hitting times for the loss of isolated facets and for vanishing homology.

use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::homology::{homology, homology_is_zero};
use crate::simplex::{binomial, face_unrank, faces_of_dim, Complex, Face};
use crate::Int;

/// Seed of trial `index` under `master`: two rounds of the splitmix64
/// finalizer, so neighbouring indices give unrelated streams.
pub fn derive_seed(master: u64, index: u64) -> u64 {
    fn mix(mut z: u64) -> u64 {
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        z ^ (z >> 31)
    }
    mix(mix(master.wrapping_add(0x9e37_79b9_7f4a_7c15)) ^ index)
}

fn check_dims(n: usize, d: usize) -> Result<()> {
    Complex::empty(n, d).map(|_| ())
}

/// Includes every `d`-face independently with probability `p`.
pub fn sample_static(n: usize, d: usize, p: f64, seed: u64) -> Result<Complex> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidParameter(format!("probability {p} outside [0, 1]")));
    }
    check_dims(n, d)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Complex::from_faces(n, d, faces_of_dim(n, d).filter(|_| rng.gen_bool(p)))
}

/// Both hitting times of one run of the process.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HittingTimes {
    pub t_iso: usize,
    pub t_hom: usize,
}

enum Order {
    /// Fisher-Yates over colex ranks, drawn one position at a time. Only
    /// displaced positions are stored.
    Shuffle {
        rng: Box<ChaCha8Rng>,
        swapped: HashMap<u64, u64>,
    },
    Fixed(Vec<u64>),
}

/// One run of the process: a uniformly random ordering of all `d`-faces,
/// added one at a time, with facet coverage tracked incrementally.
pub struct ProcessState {
    n: usize,
    d: usize,
    seed: Option<u64>,
    total: usize,
    order: Order,
    added: Vec<Face>,
    coverage: Vec<u32>,
    isolated: usize,
    t_iso: Option<usize>,
}

impl ProcessState {
    pub fn new(n: usize, d: usize, seed: u64) -> Result<ProcessState> {
        let order = Order::Shuffle { rng: Box::new(ChaCha8Rng::seed_from_u64(seed)), swapped: HashMap::new() };
        ProcessState::build(n, d, Some(seed), order)
    }

    /// Replays a given ordering, as colex ranks of `d`-faces. The ordering
    /// must be a permutation of all ranks.
    pub fn with_order(n: usize, d: usize, order: Vec<u64>) -> Result<ProcessState> {
        check_dims(n, d)?;
        let total = binomial(n, d + 1);
        let mut seen = vec![false; total as usize];
        for &r in &order {
            if r >= total || std::mem::replace(&mut seen[r as usize], true) {
                return Err(Error::Malformed(format!("rank {r} repeated or out of range")));
            }
        }
        if order.len() as u64 != total {
            return Err(Error::Malformed(format!("ordering has {} of {total} faces", order.len())));
        }
        ProcessState::build(n, d, None, Order::Fixed(order))
    }

    fn build(n: usize, d: usize, seed: Option<u64>, order: Order) -> Result<ProcessState> {
        check_dims(n, d)?;
        let facets = binomial(n, d) as usize;
        Ok(ProcessState {
            n,
            d,
            seed,
            total: binomial(n, d + 1) as usize,
            order,
            added: Vec::new(),
            coverage: vec![0; facets],
            isolated: facets,
            t_iso: None,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn seed(&self) -> Option<u64> {
        self.seed
    }

    /// Number of `d`-faces of the simplex.
    pub fn total(&self) -> usize {
        self.total
    }

    /// Faces added so far.
    pub fn cursor(&self) -> usize {
        self.added.len()
    }

    pub fn isolated_count(&self) -> usize {
        self.isolated
    }

    /// Number of added faces containing the facet of colex rank `rank`.
    pub fn coverage_of(&self, rank: usize) -> u32 {
        self.coverage[rank]
    }

    pub fn added(&self) -> &[Face] {
        &self.added
    }

    fn next_rank(&mut self) -> u64 {
        let i = self.added.len() as u64;
        match &mut self.order {
            Order::Fixed(v) => v[i as usize],
            Order::Shuffle { rng, swapped } => {
                let j = rng.gen_range(i..self.total as u64);
                let at_j = swapped.remove(&j).unwrap_or(j);
                let at_i = swapped.remove(&i).unwrap_or(i);
                if j != i {
                    swapped.insert(j, at_i);
                }
                at_j
            }
        }
    }

    /// Adds the next face of the ordering.
    pub fn step(&mut self) -> Result<Face> {
        if self.added.len() == self.total {
            return Err(Error::ProcessExhausted(self.total));
        }
        let rank = self.next_rank();
        let face = face_unrank(rank, self.d, self.n)?;
        for (_, r) in face.boundary_ranks() {
            let c = &mut self.coverage[r as usize];
            if *c == 0 {
                self.isolated -= 1;
            }
            *c += 1;
        }
        self.added.push(face.clone());
        if self.isolated == 0 && self.t_iso.is_none() {
            self.t_iso = Some(self.added.len());
        }
        Ok(face)
    }

    /// Steps until `m` faces have been added.
    pub fn advance_to(&mut self, m: usize) -> Result<()> {
        if m > self.total {
            return Err(Error::OutOfRange { index: m, limit: self.total });
        }
        while self.added.len() < m {
            self.step()?;
        }
        Ok(())
    }

    /// The complex formed by the first `m` faces, which must already have
    /// been added.
    pub fn snapshot(&self, m: usize) -> Result<Complex> {
        if m > self.added.len() {
            return Err(Error::OutOfRange { index: m, limit: self.added.len() });
        }
        Complex::from_faces(self.n, self.d, self.added[..m].iter().cloned())
    }

    /// First `m` with no isolated facet.
    pub fn hitting_time_isolated(&mut self) -> Result<usize> {
        while self.t_iso.is_none() {
            self.step()?;
        }
        Ok(self.t_iso.expect("set once isolated facets run out"))
    }

    /// First `m` with vanishing integral homology, by binary search over
    /// `[t_iso, total]`. Adding a face only quotients the top homology, so
    /// vanishing is monotone, and the complete complex is acyclic.
    pub fn hitting_time_homology(&mut self) -> Result<usize> {
        let (mut lo, mut hi) = (self.hitting_time_isolated()?, self.total);
        self.advance_to(hi)?;
        while lo < hi {
            let mid = lo + (hi - lo) / 2;
            if homology_is_zero(&self.snapshot(mid)?) {
                hi = mid;
            } else {
                lo = mid + 1;
            }
        }
        Ok(lo)
    }

    /// Linear-scan counterpart of [`hitting_time_homology`], checking every
    /// `m` from `t_iso` on.
    ///
    /// [`hitting_time_homology`]: ProcessState::hitting_time_homology
    pub fn hitting_time_homology_linear(&mut self) -> Result<usize> {
        let mut m = self.hitting_time_isolated()?;
        self.advance_to(self.total)?;
        while !homology_is_zero(&self.snapshot(m)?) {
            m += 1;
        }
        Ok(m)
    }

    pub fn hitting_times(&mut self) -> Result<HittingTimes> {
        let t_iso = self.hitting_time_isolated()?;
        let t_hom = self.hitting_time_homology()?;
        Ok(HittingTimes { t_iso, t_hom })
    }
}

/// One line of a hitting-time campaign. `rank_before` and `torsion_before`
/// describe the homology one face before the last isolated facet is covered.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrialRecord {
    pub n: usize,
    pub d: usize,
    pub seed: u64,
    pub t_iso: usize,
    pub t_hom: usize,
    pub coincide: bool,
    pub rank_before: usize,
    pub torsion_before: Vec<Int>,
}

pub fn run_trial(n: usize, d: usize, seed: u64) -> Result<TrialRecord> {
    let mut state = ProcessState::new(n, d, seed)?;
    let HittingTimes { t_iso, t_hom } = state.hitting_times()?;
    if t_hom < t_iso {
        return Err(Error::Violation(format!("t_hom = {t_hom} precedes t_iso = {t_iso} (seed {seed})")));
    }
    let before = homology(&state.snapshot(t_iso - 1)?);
    Ok(TrialRecord {
        n,
        d,
        seed,
        t_iso,
        t_hom,
        coincide: t_iso == t_hom,
        rank_before: before.free_rank,
        torsion_before: before.torsion,
    })
}
