#![allow(dead_code)]

pub mod props;

use std::path::PathBuf;
use std::sync::OnceLock;

use taxosim::{load_wordnet_dir, Taxonomy};

/// `TAXOSIM_WORDNET_DIR`, or the copy bundled with the repository.
pub fn wordnet_dir() -> PathBuf {
    std::env::var_os("TAXOSIM_WORDNET_DIR")
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data/wordnet-3.0"))
}

pub fn wordnet() -> &'static Taxonomy {
    static WORDNET: OnceLock<Taxonomy> = OnceLock::new();
    WORDNET.get_or_init(|| {
        let dir = wordnet_dir();
        load_wordnet_dir(&dir).unwrap_or_else(|e| panic!("loading {}: {e}", dir.display()))
    })
}
