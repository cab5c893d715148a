//! Periodized orthonormal wavelet synthesis on dyadic grids.
//!
//! Atoms are built by running the inverse (synthesis) transform on unit
//! coefficient vectors with circular boundary handling, which keeps the
//! resulting family exactly orthonormal on dyadic grids.

use nalgebra::DVector;

/// 8-tap Daubechies synthesis low-pass filter (extremal phase), normalized
/// so that Σh = √2 and Σh² = 1.
pub(crate) const DAUBECHIES8_LOWPASS: [f64; 8] = [
    0.230_377_813_308_855_23,
    0.714_846_570_552_541_5,
    0.630_880_767_929_590_4,
    -0.027_983_769_416_983_85,
    -0.187_034_811_718_881_14,
    0.030_841_381_835_986_965,
    0.032_883_011_666_982_945,
    -0.010_597_401_784_997_278,
];

/// 2-tap Haar low-pass filter.
pub(crate) const HAAR_LOWPASS: [f64; 2] = [std::f64::consts::FRAC_1_SQRT_2, std::f64::consts::FRAC_1_SQRT_2];

/// Quadrature-mirror high-pass: g[k] = (−1)^k · h[L−1−k].
pub(crate) fn highpass(low: &[f64]) -> Vec<f64> {
    let l = low.len();
    (0..l)
        .map(|k| {
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            sign * low[l - 1 - k]
        })
        .collect()
}

/// One periodized synthesis stage: combines approximation and detail
/// coefficients of length N into a signal of length 2N.
///
/// This is the transpose of the periodized analysis a[m] = Σ_k x[(2m+k) mod 2N]·h[k],
/// so the two-channel operator is exactly orthogonal whenever the filter
/// length is at most 2N.
pub(crate) fn synthesis_step(approx: &[f64], detail: &[f64], low: &[f64], high: &[f64]) -> Vec<f64> {
    assert_eq!(approx.len(), detail.len());
    let half = approx.len();
    let full = 2 * half;
    assert!(low.len() <= full, "filter longer than the periodized signal");
    let mut out = vec![0.0; full];
    for m in 0..half {
        let (a, d) = (approx[m], detail[m]);
        if a == 0.0 && d == 0.0 {
            continue;
        }
        for (k, (&h, &g)) in low.iter().zip(high).enumerate() {
            let i = (2 * m + k) % full;
            out[i] += a * h + d * g;
        }
    }
    out
}

/// Synthesize a single atom on a grid of length `n = 2^log2_n`.
///
/// `level` is the dyadic resolution level of the coefficient (array length
/// 2^level); `wavelet` selects the detail channel, otherwise the
/// approximation channel is used (a scaling atom).
pub(crate) fn synthesize_atom(
    log2_n: u32,
    level: u32,
    shift: usize,
    wavelet: bool,
    low: &[f64],
) -> DVector<f64> {
    assert!(level < log2_n);
    let len = 1usize << level;
    assert!(shift < len);
    let high = highpass(low);
    let mut unit = vec![0.0; len];
    unit[shift] = 1.0;
    let zeros = vec![0.0; len];
    let mut x = if wavelet {
        synthesis_step(&zeros, &unit, low, &high)
    } else {
        synthesis_step(&unit, &zeros, low, &high)
    };
    for _ in level + 1..log2_n {
        let zeros = vec![0.0; x.len()];
        x = synthesis_step(&x, &zeros, low, &high);
    }
    DVector::from_vec(x)
}
