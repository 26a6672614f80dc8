use std::path::PathBuf;

use lamcount::counting::{count_family, load_table, save_table, CountError, CountTable};
use lamcount::Family;

pub const CACHE_ENV: &str = "LAMCOUNT_CACHE_DIR";

/// Count tables stored as `<family>[_<param>]_n<max>.json`.
pub struct Cache {
    dir: Option<PathBuf>,
}

impl Cache {
    /// `flag` wins over the environment; neither means no caching.
    pub fn new(flag: Option<PathBuf>) -> Cache {
        let dir = flag.or_else(|| std::env::var_os(CACHE_ENV).filter(|v| !v.is_empty()).map(PathBuf::from));
        Cache { dir }
    }

    fn path(&self, fam: Family, n: usize) -> Option<PathBuf> {
        let name = match fam.param() {
            Some(p) => format!("{}_{p}_n{n}.json", fam.name()),
            None => format!("{}_n{n}.json", fam.name()),
        };
        self.dir.as_ref().map(|d| d.join(name))
    }

    /// Loads the table from the cache, or builds and stores it.
    ///
    /// An unreadable cache entry is rebuilt rather than reported.
    pub fn table(&self, fam: Family, n: usize) -> Result<CountTable, CountError> {
        let Some(path) = self.path(fam, n) else { return count_family(fam, n) };
        if let Ok(t) = load_table(&path) {
            if t.family() == fam && t.max_size() == n {
                return Ok(t);
            }
        }
        let t = count_family(fam, n)?;
        std::fs::create_dir_all(path.parent().unwrap())?;
        save_table(&t, &path)?;
        Ok(t)
    }
}
