//! Content-addressed on-disk cache for categories and tabulated functors.

use std::fs::File;
use std::io::{BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicU64, Ordering};

use hyperoct::barfun::{BarFunctor, BarVariant, FunctorTable};
use hyperoct::croscat::{CategoryKind, TruncatedCategory};
use hyperoct::pipeline::Resources;
use hyperoct::InvolutiveAlgebra;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use tempfile::NamedTempFile;

use crate::algebra_spec::fingerprint;

const FORMAT: &str = "hyperoct-cache-v1";

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheStats {
    pub hits: u64,
    pub misses: u64,
}

/// Categories are keyed by `(kind, N)`, functor tables by the algebra
/// fingerprint, the variant and the category. Unreadable entries are rebuilt.
pub struct DiskCache {
    dir: PathBuf,
    hits: AtomicU64,
    misses: AtomicU64,
}

impl DiskCache {
    pub fn open(dir: &Path) -> std::io::Result<DiskCache> {
        std::fs::create_dir_all(dir)?;
        Ok(DiskCache { dir: dir.to_path_buf(), hits: AtomicU64::new(0), misses: AtomicU64::new(0) })
    }

    pub fn stats(&self) -> CacheStats {
        CacheStats { hits: self.hits.load(Ordering::Relaxed), misses: self.misses.load(Ordering::Relaxed) }
    }

    fn path(&self, prefix: &str, key: &str) -> PathBuf {
        let digest = hex::encode(Sha256::digest(format!("{FORMAT}\n{key}")));
        self.dir.join(format!("{prefix}-{digest}.json"))
    }

    fn load<T: DeserializeOwned>(&self, path: &Path) -> Option<T> {
        let file = File::open(path).ok()?;
        serde_json::from_reader(BufReader::new(file)).ok()
    }

    /// Writes to a temporary file in the cache directory, then renames it
    /// into place.
    fn store<T: Serialize>(&self, path: &Path, value: &T) -> std::io::Result<()> {
        let mut tmp = NamedTempFile::new_in(&self.dir)?;
        {
            let mut w = BufWriter::new(tmp.as_file_mut());
            serde_json::to_writer(&mut w, value)?;
            w.flush()?;
        }
        tmp.as_file().sync_all()?;
        tmp.persist(path).map_err(|e| e.error)?;
        Ok(())
    }

    fn record(&self, hit: bool) {
        let counter = if hit { &self.hits } else { &self.misses };
        counter.fetch_add(1, Ordering::Relaxed);
    }
}

impl Resources for DiskCache {
    fn category(&self, kind: CategoryKind, max_object: usize) -> hyperoct::Result<TruncatedCategory> {
        let path = self.path("category", &format!("{}/{max_object}", kind.tag()));
        if let Some(mut cat) = self.load::<TruncatedCategory>(&path) {
            if cat.kind() == kind && cat.max_object() == max_object as i32 {
                cat.restore_index();
                self.record(true);
                return Ok(cat);
            }
        }
        self.record(false);
        let cat = TruncatedCategory::new(kind, max_object);
        let _ = self.store(&path, &cat);
        Ok(cat)
    }

    fn functor(
        &self,
        algebra: &InvolutiveAlgebra,
        variant: BarVariant,
        cat: &TruncatedCategory,
    ) -> hyperoct::Result<FunctorTable> {
        let key = format!("{}/{variant:?}/{}/{}", fingerprint(algebra), cat.kind().tag(), cat.max_object());
        let path = self.path("functor", &key);
        if let Some(f) = self.load::<FunctorTable>(&path) {
            let shape_ok = f.matrices().len() == cat.table().num_morphisms() && f.dims().len() == cat.objects().len();
            if shape_ok {
                self.record(true);
                return Ok(f);
            }
        }
        self.record(false);
        let f = BarFunctor::new(algebra.clone(), variant)?.tabulate(cat)?;
        let _ = self.store(&path, &f);
        Ok(f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use hyperoct::pipeline::Direct;
    use hyperoct::Ring;

    #[test]
    fn round_trip_matches_direct() {
        let dir = tempfile::tempdir().unwrap();
        let cache = DiskCache::open(dir.path()).unwrap();
        let alg = InvolutiveAlgebra::cyclic(2, Ring::Rationals).unwrap();
        for _ in 0..2 {
            let cat = cache.category(CategoryKind::Full, 1).unwrap();
            let direct = Direct.category(CategoryKind::Full, 1).unwrap();
            assert_eq!(cat.morphisms(), direct.morphisms());
            assert_eq!(cat.table(), direct.table());
            let f = cache.functor(&alg, BarVariant::Full, &cat).unwrap();
            assert_eq!(f, Direct.functor(&alg, BarVariant::Full, &direct).unwrap());
            let id = cat.index_of(&direct.morphisms()[3]).unwrap();
            assert_eq!(id, 3);
        }
        assert_eq!(cache.stats(), CacheStats { hits: 2, misses: 2 });
    }

    #[test]
    fn corrupt_entries_are_rebuilt() {
        let dir = tempfile::tempdir().unwrap();
        let cache = DiskCache::open(dir.path()).unwrap();
        cache.category(CategoryKind::Epi, 1).unwrap();
        for entry in std::fs::read_dir(dir.path()).unwrap() {
            std::fs::write(entry.unwrap().path(), b"{ not json").unwrap();
        }
        let cat = cache.category(CategoryKind::Epi, 1).unwrap();
        assert_eq!(cat.table(), Direct.category(CategoryKind::Epi, 1).unwrap().table());
        assert_eq!(cache.stats().misses, 2);
    }
}
