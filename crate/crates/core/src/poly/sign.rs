use std::fmt;

/// Element of `{0,1}^k`; bit `i` set means focus `i+1` enters with a minus sign
/// in `Σ (−1)^{σᵢ} wᵢ rᵢ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignVector {
    bits: u64,
    len: u8,
}

impl SignVector {
    pub const MAX_LEN: usize = 63;

    /// Panics if `len > 63` or `bits` has bits beyond `len`.
    pub fn new(bits: u64, len: usize) -> Self {
        assert!(len <= Self::MAX_LEN);
        assert!(bits >> len == 0, "bits beyond sign-vector length");
        SignVector { bits, len: len as u8 }
    }

    pub fn zeros(len: usize) -> Self {
        Self::new(0, len)
    }

    /// All `2^k` sign vectors in increasing bit order.
    pub fn all(len: usize) -> impl Iterator<Item = SignVector> {
        (0..1u64 << len).map(move |b| SignVector::new(b, len))
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn len(&self) -> usize {
        self.len as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// `(−1)^{σᵢ}` as ±1.
    pub fn sign(&self, i: usize) -> f64 {
        if self.bits >> i & 1 == 1 {
            -1.0
        } else {
            1.0
        }
    }

    pub fn popcount(&self) -> u32 {
        self.bits.count_ones()
    }

    pub fn complement(&self) -> SignVector {
        let mask = if self.len == 64 { u64::MAX } else { (1u64 << self.len) - 1 };
        SignVector { bits: !self.bits & mask, len: self.len }
    }

    /// `Σ (−1)^{σᵢ} vᵢ`.
    pub fn signed_sum(&self, values: &[f64]) -> f64 {
        values.iter().enumerate().map(|(i, v)| self.sign(i) * v).sum()
    }
}

impl fmt::Display for SignVector {
    /// `σ₁σ₂…σ_k` as a bit string.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len() {
            f.write_str(if self.bits >> i & 1 == 1 { "1" } else { "0" })?;
        }
        Ok(())
    }
}
