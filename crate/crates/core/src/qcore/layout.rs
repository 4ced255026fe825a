use std::fmt;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Ordered list of named subsystems with their dimensions.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SystemLayout {
    labels: Vec<String>,
    dims: Vec<usize>,
}

impl SystemLayout {
    pub fn new<S: Into<String>>(labels: impl IntoIterator<Item = S>, dims: &[usize]) -> Result<Self> {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.len() != dims.len() {
            return Err(Error::InvalidLayout(format!("{} labels but {} dimensions", labels.len(), dims.len())));
        }
        for (i, label) in labels.iter().enumerate() {
            if label.is_empty() {
                return Err(Error::InvalidLayout("empty label".into()));
            }
            if labels[..i].contains(label) {
                return Err(Error::DuplicateLabel(label.clone()));
            }
        }
        if let Some(pos) = dims.iter().position(|&d| d == 0) {
            return Err(Error::InvalidLayout(format!("label `{}` has dimension 0", labels[pos])));
        }
        dims.iter()
            .try_fold(1usize, |acc, &d| acc.checked_mul(d))
            .ok_or_else(|| Error::DimensionOverflow("total dimension overflows".into()))?;
        Ok(Self { labels, dims: dims.to_vec() })
    }

    /// A single subsystem.
    pub fn single(label: &str, dim: usize) -> Result<Self> {
        Self::new([label], &[dim])
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().product()
    }

    pub fn position(&self, label: &str) -> Result<usize> {
        self.labels.iter().position(|l| l == label).ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    pub fn dim_of(&self, label: &str) -> Result<usize> {
        Ok(self.dims[self.position(label)?])
    }

    pub fn contains(&self, label: &str) -> bool {
        self.labels.iter().any(|l| l == label)
    }

    /// Positions of `labels`, sorted into layout order and deduplicated.
    pub fn positions<S: AsRef<str>>(&self, labels: &[S]) -> Result<Vec<usize>> {
        let mut out = labels.iter().map(|l| self.position(l.as_ref())).collect::<Result<Vec<_>>>()?;
        out.sort_unstable();
        out.dedup();
        Ok(out)
    }

    pub fn subset_dim(&self, positions: &[usize]) -> usize {
        positions.iter().map(|&p| self.dims[p]).product()
    }

    /// Layout restricted to `positions` (given in layout order).
    pub fn sublayout(&self, positions: &[usize]) -> Self {
        Self {
            labels: positions.iter().map(|&p| self.labels[p].clone()).collect(),
            dims: positions.iter().map(|&p| self.dims[p]).collect(),
        }
    }

    /// Positions not in `positions`.
    pub fn complement(&self, positions: &[usize]) -> Vec<usize> {
        (0..self.len()).filter(|p| !positions.contains(p)).collect()
    }

    pub fn concat(&self, other: &Self) -> Result<Self> {
        if let Some(dup) = other.labels.iter().find(|l| self.contains(l)) {
            return Err(Error::DuplicateLabel(dup.clone()));
        }
        let mut labels = self.labels.clone();
        labels.extend(other.labels.iter().cloned());
        let mut dims = self.dims.clone();
        dims.extend_from_slice(&other.dims);
        Ok(Self { labels, dims })
    }

    /// Replace the subsystem at `pos` with `replacement`, keeping the order.
    pub(crate) fn splice(&self, pos: usize, replacement: &Self) -> Result<Self> {
        let mut labels = self.labels.clone();
        let mut dims = self.dims.clone();
        labels.splice(pos..=pos, replacement.labels.iter().cloned());
        dims.splice(pos..=pos, replacement.dims.iter().copied());
        Self::new(labels, &dims)
    }

    /// For every basis index, the pair (index within `keep`, index within the
    /// complement), both row-major in layout order.
    pub(crate) fn split_indices(&self, keep: &[usize]) -> (Vec<usize>, Vec<usize>) {
        let total = self.total_dim();
        let mut keep_idx = vec![0usize; total];
        let mut rest_idx = vec![0usize; total];
        let mut digits = vec![0usize; self.len()];
        for n in 0..total {
            let (mut k, mut r) = (0usize, 0usize);
            for (p, &d) in self.dims.iter().enumerate() {
                if keep.contains(&p) {
                    k = k * d + digits[p];
                } else {
                    r = r * d + digits[p];
                }
            }
            keep_idx[n] = k;
            rest_idx[n] = r;
            // increment the mixed-radix counter, last label fastest
            for p in (0..self.len()).rev() {
                digits[p] += 1;
                if digits[p] < self.dims[p] {
                    break;
                }
                digits[p] = 0;
            }
        }
        (keep_idx, rest_idx)
    }
}

impl fmt::Display for SystemLayout {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.labels.iter().zip(&self.dims).map(|(l, d)| format!("{l}:{d}")).collect();
        write!(f, "[{}]", parts.join(", "))
    }
}
