//! On-disk cache of reduced tangent-cone bases.
//!
//! One JSON file per element under `<dir>/v<version>/a<rank>/<one-line>.json`.
//! Entries are written to a temporary file and renamed into place.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use tcone_core::schubert::{tangent_cone, PIPELINE_VERSION};
use tcone_core::{ConeSource, Permutation, Polynomial, SchubertError, TangentCone};

#[derive(Serialize, Deserialize)]
struct Entry {
    version: u32,
    rank: usize,
    one_line: Vec<usize>,
    dimension: i64,
    generators: Vec<String>,
}

pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        Cache { dir: dir.into() }
    }

    fn path(&self, w: &Permutation) -> PathBuf {
        let key: Vec<String> = w.one_line().iter().map(|i| i.to_string()).collect();
        self.dir
            .join(format!("v{PIPELINE_VERSION}"))
            .join(format!("a{}", w.rank()))
            .join(format!("{}.json", key.join("-")))
    }

    fn read(&self, path: &Path, w: &Permutation) -> Result<Option<TangentCone>, String> {
        let text = match fs::read_to_string(path) {
            Ok(t) => t,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
            Err(e) => return Err(e.to_string()),
        };
        let entry: Entry = serde_json::from_str(&text).map_err(|e| e.to_string())?;
        if entry.version != PIPELINE_VERSION || entry.rank != w.rank() || entry.one_line != w.one_line() {
            return Err("entry does not belong to this key".into());
        }
        let table = tcone_core::schubert::coordinate_table(w.rank());
        let gens = entry
            .generators
            .iter()
            .map(|g| tcone_core::parse_poly(g, &table))
            .collect::<Result<Vec<Polynomial>, _>>()
            .map_err(|e| e.to_string())?;
        let cone = TangentCone::from_generators(w, gens).map_err(|e| e.to_string())?;
        if cone.generators().iter().map(|g| g.to_string()).ne(entry.generators.iter().cloned()) {
            return Err("stored generators are not a reduced basis".into());
        }
        if cone.dimension != entry.dimension {
            return Err("stored dimension disagrees with the generators".into());
        }
        Ok(Some(cone))
    }

    fn write(&self, path: &Path, cone: &TangentCone) -> std::io::Result<()> {
        let parent = path.parent().expect("cache paths have a parent");
        fs::create_dir_all(parent)?;
        let entry = Entry {
            version: PIPELINE_VERSION,
            rank: cone.rank,
            one_line: cone.w.one_line().to_vec(),
            dimension: cone.dimension,
            generators: cone.generators().iter().map(|g| g.to_string()).collect(),
        };
        let mut tmp = tempfile::NamedTempFile::new_in(parent)?;
        serde_json::to_writer(&mut tmp, &entry)?;
        tmp.write_all(b"\n")?;
        tmp.persist(path).map_err(|e| e.error)?;
        Ok(())
    }
}

impl ConeSource for Cache {
    fn tangent_cone(&self, w: &Permutation) -> Result<TangentCone, SchubertError> {
        let path = self.path(w);
        match self.read(&path, w) {
            Ok(Some(cone)) => return Ok(cone),
            Ok(None) => {}
            Err(e) => eprintln!("warning: ignoring cache entry {}: {e}", path.display()),
        }
        let cone = tangent_cone(w)?;
        if let Err(e) = self.write(&path, &cone) {
            eprintln!("warning: could not write cache entry {}: {e}", path.display());
        }
        Ok(cone)
    }
}
