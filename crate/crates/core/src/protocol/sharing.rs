//! n-of-n XOR secret sharing.

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha20Rng;
use serde::{Deserialize, Serialize};

use crate::error::{validation, Error, Result};

/// A secret octet string.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct Secret(Vec<u8>);

impl Secret {
    pub fn new(bytes: Vec<u8>) -> Result<Self> {
        if bytes.is_empty() {
            return Err(validation("secret must be at least one byte"));
        }
        Ok(Secret(bytes))
    }

    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn to_hex(&self) -> String {
        hex::encode(&self.0)
    }

    pub fn from_hex(s: &str) -> Result<Self> {
        let bytes = hex::decode(s).map_err(|e| validation(format!("bad hex secret: {e}")))?;
        Secret::new(bytes)
    }
}

impl std::fmt::Debug for Secret {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Secret({})", self.to_hex())
    }
}

impl TryFrom<String> for Secret {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        Secret::from_hex(&s)
    }
}

impl From<Secret> for String {
    fn from(s: Secret) -> Self {
        s.to_hex()
    }
}

/// Ordered shares whose XOR is the originating secret.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShareSet {
    shares: Vec<Vec<u8>>,
}

impl ShareSet {
    /// Wrap raw shares; consistency is checked at reconstruction time.
    pub fn from_shares(shares: Vec<Vec<u8>>) -> Self {
        ShareSet { shares }
    }

    pub fn shares(&self) -> &[Vec<u8>] {
        &self.shares
    }

    pub fn len(&self) -> usize {
        self.shares.len()
    }

    pub fn is_empty(&self) -> bool {
        self.shares.is_empty()
    }

    pub fn share(&self, index: usize) -> &[u8] {
        &self.shares[index]
    }
}

/// Split `secret` into `n` shares using a ChaCha20 stream seeded from `seed`.
pub fn split_secret(secret: &Secret, n: usize, seed: u64) -> Result<ShareSet> {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    split_secret_with(secret, n, &mut rng)
}

/// Split with a caller-supplied generator: `n - 1` random shares, the last is
/// the secret XOR all of them.
pub fn split_secret_with<R: RngCore>(secret: &Secret, n: usize, rng: &mut R) -> Result<ShareSet> {
    if n == 0 {
        return Err(validation("share count must be at least 1"));
    }
    let mut last = secret.as_bytes().to_vec();
    let mut shares = Vec::with_capacity(n);
    for _ in 1..n {
        let mut share = vec![0u8; secret.len()];
        rng.fill_bytes(&mut share);
        xor_into(&mut last, &share);
        shares.push(share);
    }
    shares.push(last);
    Ok(ShareSet { shares })
}

/// XOR-fold all shares.
pub fn reconstruct(shares: &ShareSet) -> Result<Secret> {
    let Some(first) = shares.shares.first() else {
        return Err(Error::Reconstruction("no shares".into()));
    };
    let mut acc = first.clone();
    for (i, s) in shares.shares.iter().enumerate().skip(1) {
        if s.len() != acc.len() {
            return Err(Error::Reconstruction(format!(
                "share {i} has length {}, expected {}",
                s.len(),
                acc.len()
            )));
        }
        xor_into(&mut acc, s);
    }
    Secret::new(acc).map_err(|_| Error::Reconstruction("shares are empty".into()))
}

/// Reconstruct from a set that must contain exactly `expected` shares.
pub fn reconstruct_complete(shares: &ShareSet, expected: usize) -> Result<Secret> {
    if shares.len() != expected {
        return Err(Error::Reconstruction(format!(
            "holding {} of {expected} shares",
            shares.len()
        )));
    }
    reconstruct(shares)
}

fn xor_into(acc: &mut [u8], other: &[u8]) {
    for (a, b) in acc.iter_mut().zip(other) {
        *a ^= b;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn secret(s: &str) -> Secret {
        Secret::new(s.as_bytes().to_vec()).unwrap()
    }

    #[test]
    fn single_share_is_the_secret() {
        let s = secret("abc");
        let set = split_secret(&s, 1, 9).unwrap();
        assert_eq!(set.shares(), &[b"abc".to_vec()]);
        assert_eq!(reconstruct(&set).unwrap(), s);
    }

    #[test]
    fn seeded_split_is_deterministic() {
        let s = secret("abc");
        let x = split_secret(&s, 3, 42).unwrap();
        let y = split_secret(&s, 3, 42).unwrap();
        assert_eq!(x, y);
        assert_ne!(x, split_secret(&s, 3, 43).unwrap());
        assert_eq!(reconstruct(&x).unwrap(), s);
    }

    #[test]
    fn zero_shares_rejected() {
        assert!(split_secret(&secret("abc"), 0, 1).is_err());
        assert!(Secret::new(vec![]).is_err());
    }

    #[test]
    fn reconstruct_errors() {
        assert!(reconstruct(&ShareSet::from_shares(vec![])).is_err());
        let uneven = ShareSet::from_shares(vec![vec![1, 2], vec![3]]);
        assert!(matches!(
            reconstruct(&uneven),
            Err(Error::Reconstruction(_))
        ));
        let set = split_secret(&secret("xy"), 3, 5).unwrap();
        let partial = ShareSet::from_shares(set.shares()[..2].to_vec());
        assert!(reconstruct_complete(&partial, 3).is_err());
        assert_eq!(reconstruct_complete(&set, 3).unwrap(), secret("xy"));
    }

    #[test]
    fn secret_hex_roundtrip() {
        let s = secret("hi");
        assert_eq!(s.to_hex(), "6869");
        assert_eq!(Secret::from_hex("6869").unwrap(), s);
        assert!(Secret::from_hex("zz").is_err());
    }
}
