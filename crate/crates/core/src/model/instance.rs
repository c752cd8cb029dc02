use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

use super::{gamma_flip, Decomposition, GammaSet, PointImage};

/// Finite multiobjective instance represented through the images of its
/// solutions. Two ids may share an image.
#[derive(Debug, Clone, PartialEq)]
pub struct Instance<T> {
    decomposition: Decomposition,
    ids: Vec<String>,
    images: Vec<PointImage<T>>,
    lookup: HashMap<String, usize>,
}

impl<T: Scalar> Instance<T> {
    /// Validates raw labelled vectors against the decomposition.
    pub fn new<S: Into<String>>(
        decomposition: Decomposition,
        points: impl IntoIterator<Item = (S, Vec<T>)>,
    ) -> Result<Self> {
        let p = decomposition.p();
        let mut ids = Vec::new();
        let mut images = Vec::new();
        let mut lookup = HashMap::new();
        for (id, values) in points {
            let id: String = id.into();
            if values.len() != p {
                return Err(Error::DimensionMismatch { expected: p, found: values.len() });
            }
            let image = PointImage::labelled(&id, values)?;
            if lookup.insert(id.clone(), ids.len()).is_some() {
                return Err(Error::DuplicateId(id));
            }
            ids.push(id);
            images.push(image);
        }
        if ids.is_empty() {
            return Err(Error::EmptyInstance);
        }
        Ok(Self { decomposition, ids, images, lookup })
    }

    pub fn decomposition(&self) -> &Decomposition {
        &self.decomposition
    }

    pub fn p(&self) -> usize {
        self.decomposition.p()
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    pub fn id(&self, i: usize) -> &str {
        &self.ids[i]
    }

    pub fn image(&self, i: usize) -> &PointImage<T> {
        &self.images[i]
    }

    pub fn images(&self) -> &[PointImage<T>] {
        &self.images
    }

    pub fn index_of(&self, id: &str) -> Result<usize> {
        self.lookup.get(id).copied().ok_or_else(|| Error::UnknownId(id.into()))
    }

    /// Maps ids to point indices.
    pub fn indices_of<S: AsRef<str>>(&self, ids: &[S]) -> Result<Vec<usize>> {
        ids.iter().map(|id| self.index_of(id.as_ref())).collect()
    }

    /// Labels for a set of point indices.
    pub fn labels(&self, indices: &[usize]) -> Vec<String> {
        indices.iter().map(|&i| self.ids[i].clone()).collect()
    }

    pub fn points(&self) -> impl Iterator<Item = (&str, &PointImage<T>)> {
        self.ids.iter().map(String::as_str).zip(self.images.iter())
    }

    /// Γ-transformed instance: same ids, flipped images and the
    /// Γ-transformed decomposition.
    pub fn transform(&self, gamma: &GammaSet) -> Result<Self> {
        let decomposition = self.decomposition.transformed(gamma)?;
        let images = self
            .images
            .iter()
            .map(|y| gamma_flip(y, gamma))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { decomposition, ids: self.ids.clone(), images, lookup: self.lookup.clone() })
    }
}

/// Validating constructor under its operational name.
pub fn validate_instance<T: Scalar, S: Into<String>>(
    decomposition: Decomposition,
    points: impl IntoIterator<Item = (S, Vec<T>)>,
) -> Result<Instance<T>> {
    Instance::new(decomposition, points)
}

pub fn transform_instance<T: Scalar>(instance: &Instance<T>, gamma: &GammaSet) -> Result<Instance<T>> {
    instance.transform(gamma)
}
