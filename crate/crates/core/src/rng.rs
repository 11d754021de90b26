//! Deterministic seeded randomness for every sampling path in the crate.
//!
//! The generator is xorshift64* (64-bit state, documented below). Streams are
//! derived from a master seed and an ordered list of labels by iterated
//! splitmix64 avalanche mixing, so any `(seed, labels)` tuple names one
//! reproducible stream and distinct tuples give independent-looking streams.
//! Gaussians come from the polar Box-Muller method. Determinism is promised
//! per implementation, not bit-identical across languages.

use ndarray::{Array1, Array2};

/// Identifier for the generator construction, surfaced for provenance dumps.
pub const RNG_ALGORITHM: &str = "splitmix64-derive/xorshift64*/polar-box-muller";

const SPLITMIX_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;
const XORSHIFT_MULT: u64 = 0x2545_F491_4F6C_DD1D;
// Tag words keep Text("0") and Index(0) on different streams.
const TAG_INDEX: u64 = 0x7c0_1;
const TAG_TEXT: u64 = 0x7c0_2;

/// splitmix64 finalizer: one full-avalanche mixing round.
#[inline]
fn mix64(z: u64) -> u64 {
    let mut z = z.wrapping_add(SPLITMIX_GAMMA);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// One component of a stream derivation path.
#[derive(Debug, Clone, Copy)]
pub enum Label<'a> {
    Text(&'a str),
    Index(u64),
}

impl<'a> From<&'a str> for Label<'a> {
    fn from(s: &'a str) -> Self {
        Label::Text(s)
    }
}

impl From<u64> for Label<'_> {
    fn from(i: u64) -> Self {
        Label::Index(i)
    }
}

impl From<usize> for Label<'_> {
    fn from(i: usize) -> Self {
        Label::Index(i as u64)
    }
}

/// Deterministic pseudo-random stream (xorshift64*, 64-bit state).
#[derive(Debug, Clone)]
pub struct RngStream {
    state: u64,
}

/// Derive a stream from a master seed and an ordered, non-empty label list.
///
/// Derivation folds each label into the state with `mix64`; text labels are
/// absorbed as little-endian 8-byte chunks followed by their byte length.
pub fn rng_derive(master_seed: u64, labels: &[Label<'_>]) -> RngStream {
    assert!(!labels.is_empty(), "rng_derive requires at least one label");
    let mut state = mix64(master_seed);
    for label in labels {
        match label {
            Label::Index(i) => {
                state = mix64(state ^ TAG_INDEX);
                state = mix64(state ^ i);
            }
            Label::Text(s) => {
                state = mix64(state ^ TAG_TEXT);
                for chunk in s.as_bytes().chunks(8) {
                    let mut word = [0u8; 8];
                    word[..chunk.len()].copy_from_slice(chunk);
                    state = mix64(state ^ u64::from_le_bytes(word));
                }
                state = mix64(state ^ s.len() as u64);
            }
        }
    }
    RngStream::from_raw_state(state)
}

impl RngStream {
    /// Stream seeded directly (single mixing round so seed 0 is usable).
    pub fn new(seed: u64) -> Self {
        Self::from_raw_state(mix64(seed))
    }

    fn from_raw_state(state: u64) -> Self {
        // xorshift64* requires nonzero state.
        let state = if state == 0 { SPLITMIX_GAMMA } else { state };
        RngStream { state }
    }

    /// Derive an independent child stream without disturbing determinism of
    /// the parent beyond consuming one draw.
    pub fn derive(&mut self, labels: &[Label<'_>]) -> RngStream {
        rng_derive(self.next_u64(), labels)
    }

    pub fn algorithm(&self) -> &'static str {
        RNG_ALGORITHM
    }

    /// Next raw 64-bit output (xorshift64*).
    #[inline]
    pub fn next_u64(&mut self) -> u64 {
        let mut x = self.state;
        x ^= x >> 12;
        x ^= x << 25;
        x ^= x >> 27;
        self.state = x;
        x.wrapping_mul(XORSHIFT_MULT)
    }

    /// Uniform f64 in [0, 1) from the top 53 bits.
    #[inline]
    pub fn uniform(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform index in [0, n).
    ///
    /// Plain modulo; the bias is ~n/2^64 and irrelevant at desk scale.
    #[inline]
    pub fn index(&mut self, n: usize) -> usize {
        assert!(n > 0, "index over empty range");
        (self.next_u64() % n as u64) as usize
    }

    /// Uniform draw from {-1.0, +1.0}.
    #[inline]
    pub fn sign(&mut self) -> f64 {
        if self.next_u64() & 1 == 0 {
            1.0
        } else {
            -1.0
        }
    }

    /// Standard normal via the polar Box-Muller method (no spare caching).
    pub fn standard_normal(&mut self) -> f64 {
        loop {
            let u = 2.0 * self.uniform() - 1.0;
            let v = 2.0 * self.uniform() - 1.0;
            let s = u * u + v * v;
            if s > 0.0 && s < 1.0 {
                return u * (-2.0 * s.ln() / s).sqrt();
            }
        }
    }

    /// Vector of i.i.d. standard normals.
    pub fn normal_vector(&mut self, dim: usize) -> Array1<f64> {
        Array1::from_shape_fn(dim, |_| self.standard_normal())
    }

    /// Row-major matrix of i.i.d. standard normals.
    pub fn normal_matrix(&mut self, rows: usize, cols: usize) -> Array2<f64> {
        Array2::from_shape_fn((rows, cols), |_| self.standard_normal())
    }
}

/// Uniform sample from the surface of the unit sphere in `dim` dimensions.
///
/// Normalized i.i.d. Gaussian vector; resamples on the astronomically rare
/// near-zero norm.
pub fn sample_unit_sphere(dim: usize, rng: &mut RngStream) -> Array1<f64> {
    assert!(dim >= 1, "sphere dimension must be positive");
    loop {
        let v = rng.normal_vector(dim);
        let norm = v.dot(&v).sqrt();
        if norm >= 1e-12 {
            return v / norm;
        }
    }
}

/// Uniform sample from the closed unit ball: sphere sample scaled by U^(1/dim).
pub fn sample_unit_ball(dim: usize, rng: &mut RngStream) -> Array1<f64> {
    let u = sample_unit_sphere(dim, rng);
    let radius = rng.uniform().powf(1.0 / dim as f64);
    u * radius
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn derive_is_deterministic() {
        let labels = [Label::from("lqr"), Label::from("ars"), Label::from(0u64)];
        let mut a = rng_derive(42, &labels);
        let mut b = rng_derive(42, &labels);
        for _ in 0..64 {
            assert_eq!(a.next_u64(), b.next_u64());
        }
    }

    #[test]
    fn derive_is_label_sensitive() {
        let mut a = rng_derive(42, &[Label::from("a")]);
        let mut b = rng_derive(42, &[Label::from("b")]);
        assert_ne!(a.next_u64(), b.next_u64());
    }

    #[test]
    fn derive_is_seed_sensitive() {
        // Oracle: run the documented mixing by hand for both seeds.
        let mut a = rng_derive(42, &[Label::from("a")]);
        let mut b = rng_derive(43, &[Label::from("a")]);
        assert_ne!(a.next_u64(), b.next_u64());
    }

    #[test]
    fn text_and_index_labels_differ() {
        let mut a = rng_derive(7, &[Label::from("0")]);
        let mut b = rng_derive(7, &[Label::from(0u64)]);
        assert_ne!(a.next_u64(), b.next_u64());
    }

    #[test]
    fn uniform_in_unit_interval() {
        let mut rng = RngStream::new(5);
        for _ in 0..10_000 {
            let v = rng.uniform();
            assert!((0.0..1.0).contains(&v));
        }
    }

    #[test]
    fn sphere_dim_one_is_sign() {
        let mut rng = RngStream::new(11);
        let mut seen_pos = false;
        let mut seen_neg = false;
        for _ in 0..64 {
            let v = sample_unit_sphere(1, &mut rng);
            assert!(v[0] == 1.0 || v[0] == -1.0, "got {}", v[0]);
            seen_pos |= v[0] > 0.0;
            seen_neg |= v[0] < 0.0;
        }
        assert!(seen_pos && seen_neg);
    }

    #[test]
    fn sphere_norm_is_one() {
        let mut rng = RngStream::new(3);
        for dim in [1usize, 2, 3, 10, 100] {
            let v = sample_unit_sphere(dim, &mut rng);
            let norm = v.dot(&v).sqrt();
            assert!((norm - 1.0).abs() <= 1e-12, "dim {dim}: norm {norm}");
        }
    }

    #[test]
    fn sphere_coordinates_are_centered() {
        // Statistical oracle: coordinate sd over 1e5 draws is ~1/sqrt(3e5),
        // so 0.01 sits beyond 5 sigma.
        let mut rng = RngStream::new(17);
        let n = 100_000;
        let mut mean = [0.0f64; 3];
        for _ in 0..n {
            let v = sample_unit_sphere(3, &mut rng);
            for (m, x) in mean.iter_mut().zip(v.iter()) {
                *m += x;
            }
        }
        for m in mean {
            assert!((m / n as f64).abs() <= 0.01, "coordinate mean {}", m / n as f64);
        }
    }

    #[test]
    fn sphere_squared_coordinate_mean_matches_inverse_dim() {
        let mut rng = RngStream::new(19);
        let dim = 5;
        let n = 100_000;
        let mut sq = 0.0;
        for _ in 0..n {
            let v = sample_unit_sphere(dim, &mut rng);
            sq += v[0] * v[0];
        }
        let mean = sq / n as f64;
        // var of u_1^2 for a sphere is ~2(d-1)/(d^2(d+2)); 3 standard errors.
        let se = (2.0 * (dim as f64 - 1.0) / ((dim * dim) as f64 * (dim as f64 + 2.0)) / n as f64)
            .sqrt();
        assert!(
            (mean - 1.0 / dim as f64).abs() <= 3.0 * se,
            "mean {mean}, expected {} +- {}",
            1.0 / dim as f64,
            3.0 * se
        );
    }

    #[test]
    fn ball_norm_at_most_one() {
        let mut rng = RngStream::new(23);
        for _ in 0..10_000 {
            let v = sample_unit_ball(4, &mut rng);
            assert!(v.dot(&v).sqrt() <= 1.0 + 1e-12);
        }
    }

    #[test]
    fn ball_dim_one_is_centered() {
        let mut rng = RngStream::new(29);
        let n = 100_000;
        let mut sum = 0.0;
        for _ in 0..n {
            sum += sample_unit_ball(1, &mut rng)[0];
        }
        assert!((sum / n as f64).abs() <= 0.01);
    }

    #[test]
    fn ball_dim_two_area_ratio() {
        // Area of radius-1/2 disk over unit disk is exactly 1/4.
        let mut rng = RngStream::new(31);
        let n = 100_000;
        let mut inside = 0u32;
        for _ in 0..n {
            let v = sample_unit_ball(2, &mut rng);
            if v.dot(&v).sqrt() <= 0.5 {
                inside += 1;
            }
        }
        let frac = inside as f64 / n as f64;
        assert!((frac - 0.25).abs() <= 0.01, "fraction {frac}");
    }

    #[test]
    fn gaussian_moments() {
        let mut rng = RngStream::new(37);
        let n = 100_000;
        let mut sum = 0.0;
        let mut sumsq = 0.0;
        for _ in 0..n {
            let g = rng.standard_normal();
            sum += g;
            sumsq += g * g;
        }
        let mean = sum / n as f64;
        let var = sumsq / n as f64 - mean * mean;
        assert!(mean.abs() < 0.02, "mean {mean}");
        assert!((var - 1.0).abs() < 0.03, "var {var}");
    }
}
