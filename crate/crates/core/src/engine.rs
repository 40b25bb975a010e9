//! Memoized lattice and spectrum computation, optionally backed by the
//! on-disk cache.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use log::{debug, warn};

use crate::cache::LatticeCache;
use crate::dsl::GroupSpec;
use crate::error::Result;
use crate::group::{Group, GroupHash};
use crate::lattice::{all_subgroups, SubgroupLattice};
use crate::measure::{spectrum, SpectrumReport};
use crate::Limits;

#[derive(Debug)]
pub struct Analysis {
    pub group: Group,
    pub lattice: SubgroupLattice,
    pub report: SpectrumReport,
}

impl Analysis {
    pub fn im_count(&self) -> u64 {
        self.report.im_count as u64
    }
}

pub struct Engine {
    limits: Limits,
    cache: Option<LatticeCache>,
    memo: Mutex<HashMap<GroupHash, Arc<Analysis>>>,
}

impl Engine {
    pub fn new(limits: Limits) -> Engine {
        Engine {
            limits,
            cache: None,
            memo: Mutex::new(HashMap::new()),
        }
    }

    pub fn with_cache(mut self, cache: LatticeCache) -> Engine {
        self.cache = Some(cache);
        self
    }

    pub fn limits(&self) -> &Limits {
        &self.limits
    }

    pub fn build(&self, spec: &GroupSpec) -> Result<Group> {
        spec.build(&self.limits)
    }

    pub fn lattice(&self, g: &Group) -> Result<SubgroupLattice> {
        if let Some(cache) = &self.cache {
            if let Some(l) = cache.get(g) {
                debug!("cache hit for {}", g.hash());
                return Ok(l);
            }
        }
        let l = all_subgroups(g, &self.limits)?;
        if let Some(cache) = &self.cache {
            if let Err(e) = cache.put(g, &l) {
                warn!("could not write cache entry: {e}");
            }
        }
        Ok(l)
    }

    pub fn analyze(&self, g: &Group) -> Result<Arc<Analysis>> {
        let hash = g.hash();
        if let Some(a) = self.memo.lock().unwrap().get(&hash) {
            return Ok(a.clone());
        }
        let lattice = self.lattice(g)?;
        let report = spectrum(g, &lattice)?;
        let a = Arc::new(Analysis {
            group: g.clone(),
            lattice,
            report,
        });
        self.memo.lock().unwrap().insert(hash, a.clone());
        Ok(a)
    }

    pub fn analyze_spec(&self, spec: &GroupSpec) -> Result<Arc<Analysis>> {
        self.analyze(&self.build(spec)?)
    }
}

impl Default for Engine {
    fn default() -> Self {
        Engine::new(Limits::default())
    }
}
