//! The canonical configuration type: a finite point set on the unit sphere,
//! stored as its exact Gram matrix.

use std::collections::BTreeSet;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{format_rational, gram_rank, ldl_decompose, Matrix, Rational};

/// Symmetric, unit-diagonal, positive semidefinite rational matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GramMatrix(Matrix);

impl GramMatrix {
    pub fn new(m: Matrix) -> Result<Self> {
        m.require_symmetric()?;
        for i in 0..m.rows() {
            if !m.get(i, i).is_one() {
                return Err(Error::NotUnitDiagonal { index: i, value: format_rational(m.get(i, i)) });
            }
        }
        let f = ldl_decompose(&m).map_err(|e| match e {
            Error::NoDiagonalPivot => Error::NotPsd { pivot: 0, value: "indefinite".into() },
            other => other,
        })?;
        if let Some(k) = f.d.iter().position(|x| x < &Rational::zero()) {
            return Err(Error::NotPsd { pivot: k, value: format_rational(&f.d[k]) });
        }
        Ok(GramMatrix(m))
    }

    pub fn len(&self) -> usize {
        self.0.rows()
    }

    pub fn is_empty(&self) -> bool {
        self.0.rows() == 0
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &Rational {
        self.0.get(i, j)
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        self.0.row(i)
    }

    pub fn matrix(&self) -> &Matrix {
        &self.0
    }
}

/// A finite configuration on the unit sphere of `R^n`, where `n` is the rank of
/// its Gram matrix (the configuration lives in the span of its points).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Configuration {
    gram: GramMatrix,
    ambient_dim: usize,
    label: Option<String>,
    labels: Option<Vec<String>>,
}

impl Configuration {
    /// Validates symmetry, unit diagonal, semidefiniteness and distinctness.
    pub fn new(gram: Matrix, label: Option<String>) -> Result<Self> {
        let gram = GramMatrix::new(gram)?;
        let n = gram.len();
        for i in 0..n {
            for j in i + 1..n {
                if gram.get(i, j).is_one() {
                    return Err(Error::DuplicatePoint(i, j));
                }
            }
        }
        let ambient_dim = gram_rank(gram.matrix())?;
        Ok(Configuration { gram, ambient_dim, label, labels: None })
    }

    /// Builds the Gram matrix of explicit rational unit vectors.
    pub fn from_rational_points(points: &[Vec<Rational>], label: Option<String>) -> Result<Self> {
        if let Some(d) = points.first().map(Vec::len) {
            if let Some(i) = points.iter().position(|p| p.len() != d) {
                return Err(Error::Parse(format!("point {i} has dimension {}, expected {d}", points[i].len())));
            }
        }
        let g = Matrix::from_fn(points.len(), points.len(), |i, j| dot(&points[i], &points[j]));
        Configuration::new(g, label)
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.len() {
            return Err(Error::Parse(format!("{} labels for {} points", labels.len(), self.len())));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    pub fn len(&self) -> usize {
        self.gram.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gram.is_empty()
    }

    pub fn gram(&self) -> &GramMatrix {
        &self.gram
    }

    #[inline]
    pub fn inner(&self, i: usize, j: usize) -> &Rational {
        self.gram.get(i, j)
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn point_name(&self, i: usize) -> String {
        match &self.labels {
            Some(l) => l[i].clone(),
            None => i.to_string(),
        }
    }

    pub fn check_index(&self, i: usize) -> Result<()> {
        if i < self.len() {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange { index: i, len: self.len() })
        }
    }

    /// Relabels points: point `i` of the result is point `perm[i]` of `self`.
    pub fn permuted(&self, perm: &[usize]) -> Configuration {
        Configuration {
            gram: GramMatrix(self.gram.matrix().permuted(perm)),
            ambient_dim: self.ambient_dim,
            label: self.label.clone(),
            labels: self.labels.as_ref().map(|l| perm.iter().map(|&p| l[p].clone()).collect()),
        }
    }
}

pub(crate) fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).map(|(x, y)| x * y).fold(Rational::zero(), |s, t| s + t)
}

/// Sorted distinct off-diagonal Gram entries.
pub fn inner_product_spectrum(c: &Configuration) -> Vec<Rational> {
    let mut set = BTreeSet::new();
    for i in 0..c.len() {
        for j in i + 1..c.len() {
            set.insert(c.inner(i, j).clone());
        }
    }
    set.into_iter().collect()
}
