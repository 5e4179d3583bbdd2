//! Content digests, rendered as `sha256:<hex>`.

use sha2::{Digest, Sha256};

pub const PREFIX: &str = "sha256:";

#[derive(Clone, Default)]
pub struct Hasher(Sha256);

impl Hasher {
    pub fn new() -> Self {
        Hasher(Sha256::new())
    }

    pub fn update(&mut self, bytes: impl AsRef<[u8]>) {
        self.0.update(bytes.as_ref());
    }

    pub fn finish(self) -> String {
        let hash = self.0.finalize();
        let mut out = String::with_capacity(PREFIX.len() + 64);
        out.push_str(PREFIX);
        for b in hash {
            out.push_str(&format!("{b:02x}"));
        }
        out
    }
}

pub fn sha256(bytes: impl AsRef<[u8]>) -> String {
    let mut h = Hasher::new();
    h.update(bytes);
    h.finish()
}

/// Digest of a sentence sequence: each sentence followed by `\n`.
pub fn sentences<S: AsRef<str>>(sentences: &[S]) -> String {
    let mut h = Hasher::new();
    for s in sentences {
        h.update(s.as_ref());
        h.update(b"\n");
    }
    h.finish()
}
