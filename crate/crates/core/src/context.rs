//! Shared evaluation context: the field, the cyclotomic ring Z[ζ_N] with
//! N = p(q - 1), the Gauss-sum cache and the worker pool.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock, RwLock};

use num_integer::Integer;

use crate::chars::MulCharacter;
use crate::cyclo::{CycInt, CycRing};
use crate::error::{Error, Result};
use crate::ff::{Field, FieldElement};
use crate::poly;

/// Default cap on the number of enumerated terms per sum.
pub const DEFAULT_BUDGET: u64 = 1 << 24;

/// Everything needed to evaluate character sums over one field.
///
/// Built once, then shared read-only; the caches fill in lazily.
pub struct GaussContext {
    field: Arc<Field>,
    ring: Arc<CycRing>,
    budget: u64,
    threads: usize,
    pool: Arc<rayon::ThreadPool>,
    tau: OnceLock<Vec<CycInt>>,
    mobius: RwLock<HashMap<usize, Arc<Vec<i8>>>>,
    pub(crate) profiles: Mutex<HashMap<crate::selberg::ProfileKey, Arc<crate::selberg::SymbolProfile>>>,
}

impl std::fmt::Debug for GaussContext {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("GaussContext")
            .field("field", &self.field)
            .field("ring", &self.ring)
            .field("budget", &self.budget)
            .field("threads", &self.threads)
            .finish()
    }
}

fn default_threads() -> usize {
    std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1)
}

impl GaussContext {
    pub fn new(p: u32, e: u32) -> Result<GaussContext> {
        GaussContext::from_field(Arc::new(Field::new(p, e)?))
    }

    pub fn from_field(field: Arc<Field>) -> Result<GaussContext> {
        let n = field.p() as u64 * field.order() as u64;
        let ring = CycRing::new(n)?;
        GaussContext::build(field, ring, DEFAULT_BUDGET, default_threads())
    }

    fn build(field: Arc<Field>, ring: Arc<CycRing>, budget: u64, threads: usize) -> Result<GaussContext> {
        let threads = threads.max(1);
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .map_err(|e| Error::Precondition(format!("thread pool: {e}")))?;
        Ok(GaussContext {
            field,
            ring,
            budget,
            threads,
            pool: Arc::new(pool),
            tau: OnceLock::new(),
            mobius: RwLock::new(HashMap::new()),
            profiles: Mutex::new(HashMap::new()),
        })
    }

    /// Same field and ring with a different worker count; caches start empty.
    pub fn with_threads(&self, threads: usize) -> Result<GaussContext> {
        GaussContext::build(self.field.clone(), self.ring.clone(), self.budget, threads)
    }

    /// Same field and ring with a different term budget.
    pub fn with_budget(&self, budget: u64) -> Result<GaussContext> {
        GaussContext::build(self.field.clone(), self.ring.clone(), budget, self.threads)
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    pub fn ring(&self) -> &Arc<CycRing> {
        &self.ring
    }

    pub fn q(&self) -> u32 {
        self.field.q()
    }

    pub fn budget(&self) -> u64 {
        self.budget
    }

    pub fn threads(&self) -> usize {
        self.threads
    }

    pub(crate) fn pool(&self) -> &rayon::ThreadPool {
        &self.pool
    }

    /// N = p(q - 1).
    pub fn n(&self) -> u64 {
        self.ring.n()
    }

    /// Character with exponent m relative to the fixed generator.
    pub fn character(&self, m: i64) -> MulCharacter {
        MulCharacter::new(m, self.field.order())
    }

    /// All characters, by exponent.
    pub fn characters(&self) -> Vec<MulCharacter> {
        (0..self.field.order() as i64).map(|m| self.character(m)).collect()
    }

    /// The quadratic character ω.
    pub fn omega(&self) -> MulCharacter {
        self.character(self.field.order() as i64 / 2)
    }

    /// Exponent k with χ(x) = ζ_N^k, or None when x = 0.
    #[inline]
    pub fn char_exponent(&self, chi: MulCharacter, x: FieldElement) -> Option<u64> {
        let l = self.field.dlog(x).ok()? as u64;
        let ord = self.field.order() as u64;
        Some(self.field.p() as u64 * ((chi.exponent() as u64 * l) % ord))
    }

    /// Exponent k with e_o(t) = ζ_N^k, where e_o = ζ_p^Tr.
    #[inline]
    pub fn additive_exponent(&self, t: FieldElement) -> u64 {
        self.field.order() as u64 * self.field.trace(t) as u64
    }

    /// ζ_N^k.
    pub fn zeta(&self, k: i64) -> CycInt {
        self.ring.root_of_unity(k)
    }

    /// χ(x) as a ring element, 0 at x = 0.
    pub fn char_value(&self, chi: MulCharacter, x: FieldElement) -> CycInt {
        match self.char_exponent(chi, x) {
            Some(k) => self.ring.root_of_unity(k as i64),
            None => self.ring.zero(),
        }
    }

    /// χ(-1) as ±1.
    pub fn char_sign(&self, chi: MulCharacter) -> i64 {
        // -1 = g^((q-1)/2), so χ(-1) = (-1)^m.
        if chi.exponent().is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    /// Gauss sums τ(χ_m) for every m, computed once.
    pub fn gauss_sums(&self) -> &[CycInt] {
        self.tau.get_or_init(|| {
            let f = &self.field;
            let n = self.ring.n() as usize;
            let ord = f.order() as u64;
            let p = f.p() as u64;
            let elems: Vec<(u64, u64)> = f
                .elements()
                .skip(1)
                .map(|a| (f.dlog(a).unwrap() as u64, self.additive_exponent(a)))
                .collect();
            self.pool.install(|| {
                use rayon::prelude::*;
                (0..ord)
                    .into_par_iter()
                    .map(|m| {
                        let mut bins = vec![0i64; n];
                        for &(l, add) in &elems {
                            let k = (p * (m * l % ord) + add) % n as u64;
                            bins[k as usize] += 1;
                        }
                        self.ring.from_bins(&bins)
                    })
                    .collect()
            })
        })
    }

    pub fn tau(&self, chi: MulCharacter) -> &CycInt {
        &self.gauss_sums()[chi.exponent() as usize]
    }

    /// Möbius values of all monic polynomials of degree i by rank.
    pub fn mobius_table(&self, i: usize) -> Result<Arc<Vec<i8>>> {
        if let Some(t) = self.mobius.read().unwrap().get(&i) {
            return Ok(t.clone());
        }
        self.check_budget(i)?;
        let table = Arc::new(poly::mobius_sieve(&self.field, i)?);
        self.mobius.write().unwrap().insert(i, table.clone());
        Ok(table)
    }

    /// Errors when q^i exceeds the term budget.
    pub fn check_budget(&self, i: usize) -> Result<u64> {
        let needed = (self.field.q() as u128).checked_pow(i as u32).unwrap_or(u128::MAX);
        if needed > self.budget as u128 {
            return Err(Error::BudgetExceeded { needed, budget: self.budget });
        }
        Ok(needed as u64)
    }

    /// Embedding indices σ coprime to N.
    pub fn embeddings(&self) -> Vec<i64> {
        let n = self.ring.n();
        (1..n as i64).filter(|k| (*k as u64).gcd(&n) == 1).collect()
    }
}
