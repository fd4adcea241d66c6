use super::{BitMatrix, BitVector, F2Error};

/// SplitMix64 finalizer; the mixing core of the counter-based generator.
///
/// Every random decision in the crate is a pure function of (seed, counter),
/// so results are independent of iteration order and thread partitioning.
pub fn mix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e3779b97f4a7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
    z ^ (z >> 31)
}

/// Derives an independent stream seed from a base seed and a stream label.
pub fn subseed(seed: u64, stream: u64) -> u64 {
    mix64(seed ^ mix64(stream.wrapping_mul(0xd1342543de82ef95).wrapping_add(1)))
}

/// Bernoulli draw for counter `index` under `seed`; `q` need not be revalidated
/// by callers that already checked it.
pub fn bernoulli(seed: u64, index: u64, q: f64) -> bool {
    if q <= 0.0 {
        return false;
    }
    if q >= 1.0 {
        return true;
    }
    // Threshold comparison on the full 64-bit output; the f64 rounding bias
    // is below 2^-52 and identical on every platform.
    let threshold = (q * 18_446_744_073_709_551_616.0) as u64;
    mix64(seed ^ mix64(index)) < threshold
}

/// Uniform random bit vector, one counter per word.
pub fn random_bits(seed: u64, len: usize) -> BitVector {
    let mut v = BitVector::zeros(len);
    for (i, w) in v.words_mut().iter_mut().enumerate() {
        *w = mix64(seed ^ mix64(0x5555_0000 ^ i as u64));
    }
    v.mask_tail();
    v
}

/// Samples a `rows x cols` matrix with i.i.d. Bernoulli(q) entries.
///
/// Entry (i, j) is derived from (seed, i, j) alone, so identical arguments
/// yield bit-identical output regardless of platform or parallel schedule.
pub fn sample_bernoulli_matrix(
    rows: usize,
    cols: usize,
    q: f64,
    seed: u64,
) -> Result<BitMatrix, F2Error> {
    if !(0.0..=1.0).contains(&q) {
        return Err(F2Error::InvalidProbability(q));
    }
    let mut m = BitMatrix::zeros(rows, cols);
    for i in 0..rows {
        let row = &mut m.rows_mut()[i];
        for j in 0..cols {
            if bernoulli(seed, (i as u64) << 32 | j as u64, q) {
                row.set(j, true);
            }
        }
    }
    Ok(m)
}
