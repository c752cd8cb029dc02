use crate::error::{Error, Result};

use super::GammaSet;

/// Direction of one objective.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sense {
    Min,
    Max,
}

/// Partition of the objective indices `0..p` into minimized and maximized
/// objectives. Indices are zero-based throughout the Rust API; the JSON
/// formats and the command line use one-based indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Decomposition {
    senses: Vec<Sense>,
}

impl Decomposition {
    /// Builds a decomposition from explicit index lists. The two lists must
    /// partition `0..p`.
    pub fn new(p: usize, min_idx: &[usize], max_idx: &[usize]) -> Result<Self> {
        if p == 0 {
            return Err(Error::InvalidDecomposition("p must be at least 1".into()));
        }
        let mut senses: Vec<Option<Sense>> = vec![None; p];
        for (list, sense) in [(min_idx, Sense::Min), (max_idx, Sense::Max)] {
            for &i in list {
                if i >= p {
                    return Err(Error::IndexOutOfRange { index: i + 1, p });
                }
                if senses[i].is_some() {
                    return Err(Error::InvalidDecomposition(format!(
                        "objective {} listed more than once",
                        i + 1
                    )));
                }
                senses[i] = Some(sense);
            }
        }
        let senses = senses
            .into_iter()
            .enumerate()
            .map(|(i, s)| {
                s.ok_or_else(|| {
                    Error::InvalidDecomposition(format!("objective {} is neither MIN nor MAX", i + 1))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { senses })
    }

    pub fn from_senses(senses: Vec<Sense>) -> Result<Self> {
        if senses.is_empty() {
            return Err(Error::InvalidDecomposition("p must be at least 1".into()));
        }
        Ok(Self { senses })
    }

    /// All objectives minimized.
    pub fn all_min(p: usize) -> Self {
        assert!(p >= 1, "p must be at least 1");
        Self { senses: vec![Sense::Min; p] }
    }

    /// All objectives maximized.
    pub fn all_max(p: usize) -> Self {
        assert!(p >= 1, "p must be at least 1");
        Self { senses: vec![Sense::Max; p] }
    }

    /// `MIN = {0..k}`, `MAX = {k..p}`.
    pub fn min_prefix(k: usize, p: usize) -> Result<Self> {
        if k > p {
            return Err(Error::InvalidDecomposition(format!("k = {k} exceeds p = {p}")));
        }
        let senses = (0..p).map(|i| if i < k { Sense::Min } else { Sense::Max }).collect();
        Self::from_senses(senses)
    }

    pub fn p(&self) -> usize {
        self.senses.len()
    }

    pub fn sense(&self, i: usize) -> Sense {
        self.senses[i]
    }

    pub fn senses(&self) -> &[Sense] {
        &self.senses
    }

    pub fn is_min(&self, i: usize) -> bool {
        self.senses[i] == Sense::Min
    }

    pub fn min_indices(&self) -> Vec<usize> {
        (0..self.p()).filter(|&i| self.is_min(i)).collect()
    }

    pub fn max_indices(&self) -> Vec<usize> {
        (0..self.p()).filter(|&i| !self.is_min(i)).collect()
    }

    /// Number of minimized objectives.
    pub fn k(&self) -> usize {
        self.senses.iter().filter(|s| **s == Sense::Min).count()
    }

    pub fn is_pure_min(&self) -> bool {
        self.senses.iter().all(|s| *s == Sense::Min)
    }

    pub fn is_pure_max(&self) -> bool {
        self.senses.iter().all(|s| *s == Sense::Max)
    }

    /// True when the minimized objectives form the prefix `0..k`.
    pub fn has_min_prefix(&self) -> bool {
        let k = self.k();
        self.senses[..k].iter().all(|s| *s == Sense::Min)
    }

    /// Reverses the direction of every objective in `gamma`.
    pub fn transformed(&self, gamma: &GammaSet) -> Result<Self> {
        gamma.check(self.p())?;
        let senses = self
            .senses
            .iter()
            .enumerate()
            .map(|(i, &s)| match (gamma.contains(i), s) {
                (false, s) => s,
                (true, Sense::Min) => Sense::Max,
                (true, Sense::Max) => Sense::Min,
            })
            .collect();
        Ok(Self { senses })
    }

    /// The set of indices whose flip maps `self` onto `target`.
    pub fn gamma_to(&self, target: &Decomposition) -> Result<GammaSet> {
        if self.p() != target.p() {
            return Err(Error::DimensionMismatch { expected: self.p(), found: target.p() });
        }
        Ok(GammaSet::new((0..self.p()).filter(|&i| self.senses[i] != target.senses[i])))
    }

    /// Short label such as `min-max-min`.
    pub fn label(&self) -> String {
        if self.is_pure_min() {
            return "min".into();
        }
        if self.is_pure_max() {
            return "max".into();
        }
        self.senses
            .iter()
            .map(|s| match s {
                Sense::Min => "min",
                Sense::Max => "max",
            })
            .collect::<Vec<_>>()
            .join("-")
    }
}
