#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::sync::OnceLock;

use halcece::io::load_taxonomy;
use halcece_core::Taxonomy;

pub fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

pub fn scenes_dir() -> PathBuf {
    fixtures().join("wordnet-scenes")
}

pub fn mini_dir() -> PathBuf {
    fixtures().join("wordnet-mini")
}

pub fn scenes() -> &'static Taxonomy {
    static T: OnceLock<Taxonomy> = OnceLock::new();
    T.get_or_init(|| load_taxonomy(&scenes_dir()).expect("scenes fixture loads"))
}

pub fn mini() -> &'static Taxonomy {
    static T: OnceLock<Taxonomy> = OnceLock::new();
    T.get_or_init(|| load_taxonomy(&mini_dir()).expect("mini fixture loads"))
}

/// WordNet 3.0 dictionary directory: `HALCECE_WORDNET_DIR`, else
/// `/opt/wordnet/dict`.
pub fn wordnet_dir() -> PathBuf {
    std::env::var_os("HALCECE_WORDNET_DIR").map(PathBuf::from).unwrap_or_else(|| PathBuf::from("/opt/wordnet/dict"))
}

/// Real WordNet. Panics with instructions when it is missing: these tests
/// must not pass vacuously.
pub fn wordnet() -> &'static Taxonomy {
    static T: OnceLock<Taxonomy> = OnceLock::new();
    T.get_or_init(|| {
        let dir = wordnet_dir();
        load_taxonomy(&dir).unwrap_or_else(|e| {
            panic!(
                "WordNet 3.0 not available at {} ({e}); set HALCECE_WORDNET_DIR to a WNDB dict directory",
                dir.display()
            )
        })
    })
}
