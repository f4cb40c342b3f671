//! Verified linear maps between algebras that respect multiplication.

use super::{Algebra, Frame};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::PolyMatrix;
use crate::mpoly::MPoly;
use crate::vars::VarKind;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HomKind {
    /// `f(xy) = f(x) f(y)`
    Homomorphism,
    /// `f(xy) = f(y) f(x)`
    Antihomomorphism,
}

/// A unital (anti)homomorphism given by the images of the source basis.
///
/// The matrix has one column per source basis vector holding the target
/// coordinates of its image; entries are polynomials in the source
/// parameters, and the target's parameters must be among them.
#[derive(Clone, Debug)]
pub struct AlgebraHom<F: Field> {
    source: Algebra<F>,
    target: Algebra<F>,
    matrix: PolyMatrix<F>,
    kind: HomKind,
    target_frame: Frame<F>,
}

impl<F: Field> AlgebraHom<F> {
    /// `images[i]` are the target coordinates of `f(e_i)`, over the source table.
    pub fn new(source: &Algebra<F>, target: &Algebra<F>, images: Vec<Vec<MPoly<F>>>, kind: HomKind) -> Result<Self> {
        if source.field() != target.field() {
            return Err(Error::FieldMismatch(
                source.field().spec().to_string(),
                target.field().spec().to_string(),
            ));
        }
        let (n, m) = (source.dim(), target.dim());
        if images.len() != n || images.iter().any(|v| v.len() != m) {
            return Err(Error::DimensionMismatch(format!(
                "need {n} images with {m} coordinates each"
            )));
        }
        let vars = source.vars();
        for v in images.iter().flatten() {
            if v.vars() != vars {
                return Err(Error::VarTableMismatch);
            }
            if v.involves(|i| vars.kind(i) != VarKind::Parameter) {
                return Err(Error::NotHomomorphism("images must not involve coordinates".into()));
            }
        }
        let target_frame = target.frame_over(vars).map_err(|_| {
            Error::NotHomomorphism("target parameters must be source parameters".into())
        })?;
        let matrix = PolyMatrix::from_columns(&images)?;
        let hom = AlgebraHom {
            source: source.clone(),
            target: target.clone(),
            matrix,
            kind,
            target_frame,
        };
        hom.verify()?;
        Ok(hom)
    }

    pub fn identity(a: &Algebra<F>) -> Self {
        let fr = a.frame();
        let images = (0..a.dim()).map(|i| fr.basis(i).into_coords()).collect();
        Self::new(a, a, images, HomKind::Homomorphism).expect("identity is a homomorphism")
    }

    fn image(&self, coords: &[MPoly<F>]) -> Result<super::Element<F>> {
        self.target_frame.element(self.matrix.apply(coords)?)
    }

    fn verify(&self) -> Result<()> {
        let sf = self.source.frame();
        let tf = &self.target_frame;
        if self.image(&sf.unit().into_coords())? != tf.unit() {
            return Err(Error::NotHomomorphism("unit is not mapped to unit".into()));
        }
        let n = self.source.dim();
        let b = self.source.basis();
        for i in 0..n {
            let fi = self.image(sf.basis(i).coords())?;
            for j in 0..n {
                let fj = self.image(sf.basis(j).coords())?;
                let lhs = self.image(sf.structure(i, j))?;
                let rhs = match self.kind {
                    HomKind::Homomorphism => tf.multiply(&fi, &fj)?,
                    HomKind::Antihomomorphism => tf.multiply(&fj, &fi)?,
                };
                if lhs != rhs {
                    return Err(Error::NotHomomorphism(format!(
                        "f({}*{}) differs from the product of the images",
                        b[i], b[j]
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn source(&self) -> &Algebra<F> {
        &self.source
    }

    pub fn target(&self) -> &Algebra<F> {
        &self.target
    }

    pub fn kind(&self) -> HomKind {
        self.kind
    }

    /// Target-by-source matrix over the source table.
    pub fn matrix(&self) -> &PolyMatrix<F> {
        &self.matrix
    }

    /// Target coordinates of `f(x)` for source coordinates `x` over the
    /// source table.
    pub fn apply(&self, x: &[MPoly<F>]) -> Result<Vec<MPoly<F>>> {
        self.matrix.apply(x)
    }

    pub fn is_surjective(&self) -> bool {
        self.matrix.rank() == self.target.dim()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::catalog_in;
    use crate::field::Rationals;

    #[test]
    fn quaternion_conjugation_is_anti() {
        let h = catalog_in(&Rationals, "quaternion").unwrap();
        let fr = h.frame();
        let m1 = MPoly::from_i64(&Rationals, h.vars(), -1);
        let images: Vec<_> = (0..4)
            .map(|i| {
                let e = fr.basis(i);
                if i == 0 { e } else { fr.scale(&e, &m1) }.into_coords()
            })
            .collect();
        assert!(AlgebraHom::new(&h, &h, images.clone(), HomKind::Antihomomorphism).is_ok());
        assert!(matches!(
            AlgebraHom::new(&h, &h, images, HomKind::Homomorphism),
            Err(Error::NotHomomorphism(_))
        ));
    }

    #[test]
    fn projection_is_surjective() {
        let d = catalog_in(&Rationals, "dim2:0,0").unwrap();
        let s1 = catalog_in(&Rationals, "split:1").unwrap();
        let c = |k| MPoly::from_i64(&Rationals, d.vars(), k);
        let f = AlgebraHom::new(&d, &s1, vec![vec![c(1)], vec![c(0)]], HomKind::Homomorphism).unwrap();
        assert!(f.is_surjective());
        assert!(AlgebraHom::new(&d, &s1, vec![vec![c(1)], vec![c(1)]], HomKind::Homomorphism).is_err());
        assert!(AlgebraHom::identity(&d).is_surjective());
    }
}
