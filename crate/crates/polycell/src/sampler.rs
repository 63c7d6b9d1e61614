//! Uniform random sampling of tilings: direct draws from an enumerated set,
//! and coupling-from-the-past over the component lattice for full polycells.
//!
//! All randomness comes from an explicit counter-based generator so that
//! results are bit-reproducible across runs, thread counts and languages:
//!
//! ```text
//! value(seed, counter):
//!   z = seed XOR (counter * 0x9E3779B97F4A7C15 + 0x243F6A8885A308D3)   (mod 2^64)
//!   z = (z XOR (z >> 30)) * 0xBF58476D1CE4E5B9                         (mod 2^64)
//!   z = (z XOR (z >> 27)) * 0x94D049BB133111EB                         (mod 2^64)
//!   value = z XOR (z >> 31)
//! ```
//!
//! (the splitmix64 finalizer applied to a Weyl sequence over the counter).
//! Integers below `n` are drawn by rejection: accept `r` when
//! `r < floor(2^64 / n) * n`, return `r mod n`, else advance the counter.


use crate::error::Error;
use crate::graph::{StepDir, VertexId};
use crate::polycell::Polycell;
use crate::tilability::{maximal_tiling, TilingOutcome};
use crate::tiling::{height_function, Tiling};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SampleMethod {
    Exact,
    Cftp,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SamplerConfig {
    pub seed: u64,
    pub method: SampleMethod,
    /// Cap on CFTP epoch doublings; at least 1.
    pub max_doubling: u32,
}

impl Default for SamplerConfig {
    fn default() -> Self {
        SamplerConfig { seed: 0, method: SampleMethod::Cftp, max_doubling: 40 }
    }
}

/// The counter-based generator documented in the module header.
pub fn counter_value(seed: u64, counter: u64) -> u64 {
    let mut z = seed
        ^ counter
            .wrapping_mul(0x9E37_79B9_7F4A_7C15)
            .wrapping_add(0x243F_6A88_85A3_08D3);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Independent sub-stream for per-sample seeds (`sample --n`): tagged so its
/// counters never collide with the CFTP move stream.
pub fn derive_subseed(seed: u64, index: u64) -> u64 {
    counter_value(seed, (1u64 << 63) | index)
}

/// Sequential view over the counter stream.
#[derive(Debug, Clone)]
pub struct CounterRng {
    seed: u64,
    counter: u64,
}

impl CounterRng {
    pub fn new(seed: u64) -> Self {
        CounterRng { seed, counter: 0 }
    }

    pub fn next_u64(&mut self) -> u64 {
        let v = counter_value(self.seed, self.counter);
        self.counter += 1;
        v
    }

    pub fn uniform_below(&mut self, n: u64) -> u64 {
        assert!(n > 0);
        let zone = (u64::MAX / n) * n;
        loop {
            let r = self.next_u64();
            if r < zone {
                return r % n;
            }
        }
    }
}

/// Uniform draw by index from an enumerated tiling set.
pub fn sample_exact(all_tilings: &[Tiling], seed: u64) -> Result<Tiling, Error> {
    if all_tilings.is_empty() {
        return Err(Error::EmptyTilingSet);
    }
    let mut sorted = all_tilings.to_vec();
    sorted.sort();
    sorted.dedup();
    let mut rng = CounterRng::new(seed);
    let idx = rng.uniform_below(sorted.len() as u64) as usize;
    Ok(sorted[idx].clone())
}

/// Chain state: heights indexed by vertex id, with the edge structure fixed.
#[derive(Debug, Clone, PartialEq, Eq)]
struct Chain {
    heights: Vec<i64>,
}

fn legal(p: &Polycell, h: &[i64], v: VertexId, up: bool) -> bool {
    if p.is_boundary_vertex(v) {
        return false;
    }
    let k = p.k() as i64;
    // down-flip needs a strict local maximum with the tension pattern
    // (incoming +1, outgoing 1-k); up-flip is the mirror image
    let (want_in, want_out) = if up { (1 - k, 1) } else { (1, 1 - k) };
    let mut has_edge = false;
    for &(e, dir) in p.incident_edges(v) {
        has_edge = true;
        let (s, t) = p.graph().edge(e).unwrap();
        let diff = h[t] - h[s];
        let want = match dir {
            StepDir::Backward => want_in, // edge arrives at v
            StepDir::Forward => want_out,
        };
        if diff != want {
            return false;
        }
    }
    has_edge
}

fn apply_move(p: &Polycell, chain: &mut Chain, v: VertexId, up: bool) {
    let k = p.k() as i64;
    if legal(p, &chain.heights, v, up) {
        chain.heights[v] += if up { k } else { -k };
    }
}

fn heights_vec(p: &Polycell, q: &Tiling) -> Result<Vec<i64>, Error> {
    let phi = height_function(p, q)?;
    let mut h = vec![0i64; p.graph().vertex_bound()];
    for (&v, &x) in phi.heights() {
        h[v] = x;
    }
    Ok(h)
}

fn tiling_from_heights(p: &Polycell, h: &[i64]) -> Tiling {
    let k = p.k() as i64;
    Tiling::new(
        (0..p.graph().edge_count())
            .filter(|&e| {
                let (s, t) = p.graph().edge(e).unwrap();
                h[t] - h[s] == 1 - k
            })
            .collect(),
    )
}

/// Interior vertices in ascending order.
fn interior_vertices(p: &Polycell) -> Vec<VertexId> {
    p.used_vertices().into_iter().filter(|&v| !p.is_boundary_vertex(v)).collect()
}

/// The unique reverse-flip-terminal tiling of a full polycell, as heights.
fn top_heights(p: &Polycell, bottom: &[i64], interior: &[VertexId]) -> Vec<i64> {
    let mut h = bottom.to_vec();
    loop {
        let mut moved = false;
        for &v in interior {
            while legal(p, &h, v, true) {
                h[v] += p.k() as i64;
                moved = true;
            }
        }
        if !moved {
            return h;
        }
    }
}

/// Exactly uniform sampling over the tilings of a full, k-regular,
/// contractible, tilable polycell via monotone coupling from the past.
pub fn sample_cftp(p: &Polycell, seed: u64, max_doubling: u32) -> Result<Tiling, Error> {
    let bottom_tiling = match maximal_tiling(p)? {
        TilingOutcome::Tiled(q) => q,
        TilingOutcome::Untilable(_) => return Err(Error::EmptyTilingSet),
    };
    let bottom = heights_vec(p, &bottom_tiling)?;
    let interior = interior_vertices(p);
    if interior.is_empty() {
        return Ok(bottom_tiling);
    }
    let top = top_heights(p, &bottom, &interior);
    if top == bottom {
        return Ok(bottom_tiling);
    }
    let n = interior.len() as u64;

    // move at absolute time -t, t >= 1, reused across epochs
    let move_at = |t: u64| -> (VertexId, bool) {
        let r = counter_value(seed, t);
        let v = interior[((r >> 1) % n) as usize];
        (v, r & 1 == 1)
    };

    let mut epoch: u64 = 1;
    for _ in 0..=max_doubling {
        let mut lo = Chain { heights: bottom.clone() };
        let mut hi = Chain { heights: top.clone() };
        for t in (1..=epoch).rev() {
            let (v, up) = move_at(t);
            apply_move(p, &mut lo, v, up);
            apply_move(p, &mut hi, v, up);
        }
        if lo == hi {
            return Ok(tiling_from_heights(p, &lo.heights));
        }
        epoch = epoch.saturating_mul(2);
    }
    Err(Error::CoalescenceCap(max_doubling))
}

/// One CFTP coupling update on a tiling, exposed for the monotonicity checks.
pub fn coupling_update(p: &Polycell, q: &Tiling, v: VertexId, up: bool) -> Result<Tiling, Error> {
    let mut chain = Chain { heights: heights_vec(p, q)? };
    apply_move(p, &mut chain, v, up);
    Ok(tiling_from_heights(p, &chain.heights))
}
