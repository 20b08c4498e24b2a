use std::collections::BTreeMap;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// A finitely supported probability distribution.
///
/// `mass_deficit` records how much mass was lost to truncation relative to a
/// known normalization, when such a normalization exists; it is zero for
/// distributions computed without truncation.
#[derive(Clone, Debug, PartialEq)]
pub struct DiscreteDistribution<K: Ord> {
    outcomes: BTreeMap<K, f64>,
    pub mass_deficit: f64,
}

impl<K: Ord + Clone> DiscreteDistribution<K> {
    /// Normalizes nonnegative weights. Zero weights are dropped.
    pub fn from_weights(weights: impl IntoIterator<Item = (K, f64)>) -> Result<Self> {
        let mut outcomes = BTreeMap::new();
        for (k, w) in weights {
            if !(w >= 0.0) || !w.is_finite() {
                return Err(Error::Inconsistent(format!("invalid weight {w}")));
            }
            if w > 0.0 {
                *outcomes.entry(k).or_insert(0.0) += w;
            }
        }
        let total: f64 = outcomes.values().sum();
        if total <= 0.0 {
            return Err(Error::Inconsistent("total weight is zero".into()));
        }
        for v in outcomes.values_mut() {
            *v /= total;
        }
        Ok(DiscreteDistribution {
            outcomes,
            mass_deficit: 0.0,
        })
    }

    /// Empirical distribution of a sample.
    pub fn from_counts(counts: &BTreeMap<K, u64>) -> Result<Self> {
        Self::from_weights(counts.iter().map(|(k, &c)| (k.clone(), c as f64)))
    }

    pub fn point_mass(key: K) -> Self {
        let mut outcomes = BTreeMap::new();
        outcomes.insert(key, 1.0);
        DiscreteDistribution {
            outcomes,
            mass_deficit: 0.0,
        }
    }

    pub fn with_deficit(mut self, deficit: f64) -> Self {
        self.mass_deficit = deficit;
        self
    }

    pub fn prob(&self, key: &K) -> f64 {
        self.outcomes.get(key).copied().unwrap_or(0.0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&K, f64)> {
        self.outcomes.iter().map(|(k, &p)| (k, p))
    }

    pub fn len(&self) -> usize {
        self.outcomes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.outcomes.is_empty()
    }

    pub fn total(&self) -> f64 {
        self.outcomes.values().sum()
    }

    /// Push-forward along `f`, merging collisions.
    pub fn map<J: Ord + Clone>(&self, mut f: impl FnMut(&K) -> J) -> DiscreteDistribution<J> {
        let mut outcomes = BTreeMap::new();
        for (k, &p) in &self.outcomes {
            *outcomes.entry(f(k)).or_insert(0.0) += p;
        }
        DiscreteDistribution {
            outcomes,
            mass_deficit: self.mass_deficit,
        }
    }

    pub fn expectation(&self, mut f: impl FnMut(&K) -> f64) -> f64 {
        self.outcomes.iter().map(|(k, &p)| p * f(k)).sum()
    }

    /// Checks nonnegativity and normalization to within `tol`.
    pub fn validate(&self, tol: f64) -> Result<()> {
        if let Some(p) = self.outcomes.values().find(|p| !(**p >= 0.0)) {
            return Err(Error::Inconsistent(format!("negative probability {p}")));
        }
        let total = self.total();
        if (total - 1.0).abs() > tol {
            return Err(Error::Inconsistent(format!(
                "probabilities sum to {total}, off by more than {tol}"
            )));
        }
        Ok(())
    }
}

#[derive(Serialize)]
struct Entry<'a, K> {
    key: &'a K,
    prob: f64,
}

impl<K: Ord + Serialize> Serialize for DiscreteDistribution<K> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let entries: Vec<Entry<'_, K>> = self
            .outcomes
            .iter()
            .map(|(key, &prob)| Entry { key, prob })
            .collect();
        let mut st = serializer.serialize_struct("DiscreteDistribution", 2)?;
        st.serialize_field("outcomes", &entries)?;
        st.serialize_field("mass_deficit", &self.mass_deficit)?;
        st.end()
    }
}
