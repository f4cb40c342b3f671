//! Ordered variable tables.
//!
//! Coordinates come first (basis order), then parameters (declaration order),
//! then auxiliary variables.
//! Coordinates and auxiliaries carry weight one in the term order and
//! parameters weight zero.

use std::sync::Arc;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum VarKind {
    Coordinate,
    Parameter,
    Aux,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VarTable {
    names: Vec<String>,
    kinds: Vec<VarKind>,
    /// Position of each variable inside its block of the term order:
    /// `(true, i)` for the weighted block, `(false, i)` for parameters.
    slots: Vec<(bool, usize)>,
    n_weighted: usize,
    n_params: usize,
}

impl VarTable {
    pub fn new<S: AsRef<str>>(coords: &[S], params: &[S], aux: &[S]) -> Result<Arc<Self>> {
        let mut names: Vec<String> = Vec::new();
        let mut kinds = Vec::new();
        let groups = [
            (coords, VarKind::Coordinate),
            (params, VarKind::Parameter),
            (aux, VarKind::Aux),
        ];
        for (group, kind) in groups {
            for n in group {
                let n = n.as_ref();
                if names.iter().any(|m| m == n) {
                    return Err(Error::NameClash(n.to_string()));
                }
                names.push(n.to_string());
                kinds.push(kind);
            }
        }
        let mut slots = Vec::with_capacity(names.len());
        let (mut w, mut p) = (0, 0);
        for k in &kinds {
            if *k == VarKind::Parameter {
                slots.push((false, p));
                p += 1;
            } else {
                slots.push((true, w));
                w += 1;
            }
        }
        Ok(Arc::new(VarTable {
            names,
            kinds,
            slots,
            n_weighted: w,
            n_params: p,
        }))
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn kind(&self, i: usize) -> VarKind {
        self.kinds[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn n_coords(&self) -> usize {
        self.kinds.iter().filter(|k| **k == VarKind::Coordinate).count()
    }

    pub fn coords(&self) -> impl Iterator<Item = usize> + '_ {
        self.indices(VarKind::Coordinate)
    }

    pub fn params(&self) -> impl Iterator<Item = usize> + '_ {
        self.indices(VarKind::Parameter)
    }

    pub fn indices(&self, kind: VarKind) -> impl Iterator<Item = usize> + '_ {
        (0..self.len()).filter(move |&i| self.kinds[i] == kind)
    }

    pub fn param_names(&self) -> Vec<String> {
        self.params().map(|i| self.names[i].clone()).collect()
    }

    pub fn coord_names(&self) -> Vec<String> {
        self.coords().map(|i| self.names[i].clone()).collect()
    }

    pub(crate) fn slot(&self, i: usize) -> (bool, usize) {
        self.slots[i]
    }

    pub(crate) fn n_weighted(&self) -> usize {
        self.n_weighted
    }

    pub(crate) fn n_params(&self) -> usize {
        self.n_params
    }

    /// Weight vector with coordinates and auxiliaries at 1, parameters at 0.
    pub fn coordinate_weights(&self) -> Vec<i64> {
        self.kinds
            .iter()
            .map(|k| if *k == VarKind::Parameter { 0 } else { 1 })
            .collect()
    }

    /// The same table with one more auxiliary variable; the name is `base`
    /// with underscores appended until it is fresh. Returns the new table and
    /// the index of the added variable.
    pub fn with_aux(&self, base: &str) -> (Arc<VarTable>, usize) {
        let mut name = base.to_string();
        while self.index_of(&name).is_some() {
            name.push('_');
        }
        let coords = self.coord_names();
        let params = self.param_names();
        let mut aux: Vec<String> = self.indices(VarKind::Aux).map(|i| self.names[i].clone()).collect();
        aux.push(name);
        let t = VarTable::new(&coords, &params, &aux).expect("fresh name");
        let idx = t.len() - 1;
        (t, idx)
    }

    /// Index map sending each variable of `self` to the variable of the same
    /// name in `target`.
    pub fn map_by_name(&self, target: &VarTable) -> Vec<Option<usize>> {
        self.names.iter().map(|n| target.index_of(n)).collect()
    }
}

pub fn same_table(a: &Arc<VarTable>, b: &Arc<VarTable>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}
