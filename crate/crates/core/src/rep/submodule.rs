use super::{matrix, PolyMatrix, Provenance, Representation};
use crate::error::{Error, Result};
use crate::polycore::{Matrix, Poly};

/// A G-stable subspace given by a full-column-rank inclusion matrix.
///
/// `pivots` are the ambient coordinates of the column-echelon pivots; the
/// remaining coordinates (`complement`) index a basis of the quotient.
#[derive(Clone, Debug)]
pub struct Submodule {
    pub ambient: Representation,
    pub inclusion: Matrix,
    pub pivots: Vec<usize>,
    pub complement: Vec<usize>,
    /// The module structure of the subspace in the basis given by the columns.
    pub rep: Representation,
}

impl Submodule {
    pub fn new(ambient: &Representation, inclusion: Matrix) -> Result<Self> {
        let n = ambient.dim();
        let m = inclusion.cols();
        let p = ambient.p();
        if inclusion.rows() != n || inclusion.characteristic() != p {
            return Err(Error::InvalidSubmodule(
                "inclusion has the wrong shape".into(),
            ));
        }
        let (_, pivots) = inclusion.transpose().rref();
        if pivots.len() != m {
            return Err(Error::InvalidSubmodule("inclusion is not injective".into()));
        }
        let complement: Vec<usize> = (0..n).filter(|i| !pivots.contains(i)).collect();
        let provenance = Provenance::node("submodule", vec![ambient.provenance.clone()]);
        if m == 0 {
            let rep = Representation {
                group: ambient.group.clone(),
                action: vec![],
                labels: vec![],
                blocks: vec![],
                provenance,
            };
            return Ok(Self {
                ambient: ambient.clone(),
                inclusion,
                pivots,
                complement,
                rep,
            });
        }
        let ip = inclusion_rows(&inclusion, &pivots);
        let ip_inv = ip.inverse().expect("pivot rows are independent");
        let incl = matrix::constant(&inclusion);
        let ai = matrix::mul(p, &ambient.action, &incl);
        let ai_p: PolyMatrix = pivots.iter().map(|&r| ai[r].clone()).collect();
        let b = matrix::mul(p, &matrix::constant(&ip_inv), &ai_p);
        let defect = matrix::sub(&ai, &matrix::mul(p, &incl, &b));
        if !matrix::is_zero(&matrix::reduce(&ambient.group, &defect, 1, 0)) {
            return Err(Error::InvalidSubmodule(
                "span is not stable under the action".into(),
            ));
        }
        let labels = (0..m)
            .map(|k| {
                let col = inclusion.column(k);
                let nz: Vec<usize> = (0..n).filter(|&i| col[i] != 0).collect();
                if nz.len() == 1 && col[nz[0]] == 1 {
                    ambient.labels[nz[0]].clone()
                } else {
                    format!("w{k}")
                }
            })
            .collect();
        let rep = Representation::new(ambient.group.clone(), b, labels, vec![m], provenance)?;
        Ok(Self {
            ambient: ambient.clone(),
            inclusion,
            pivots,
            complement,
            rep,
        })
    }

    pub fn zero(ambient: &Representation) -> Result<Self> {
        Self::new(ambient, Matrix::zeros(ambient.p(), ambient.dim(), 0))
    }

    pub fn dim(&self) -> usize {
        self.inclusion.cols()
    }

    /// `I_C I_P⁻¹`, expressing pivot coordinates through the complement modulo the submodule.
    pub fn complement_map(&self) -> Matrix {
        let p = self.ambient.p();
        if self.dim() == 0 {
            return Matrix::zeros(p, self.complement.len(), 0);
        }
        let ip_inv = inclusion_rows(&self.inclusion, &self.pivots)
            .inverse()
            .unwrap();
        inclusion_rows(&self.inclusion, &self.complement).mul(&ip_inv)
    }

    /// The projection `V → V/W` onto the complement coordinates.
    pub fn projection(&self) -> Matrix {
        let p = self.ambient.p();
        let n = self.ambient.dim();
        let c = self.complement.len();
        let k = self.complement_map();
        let mut pi = Matrix::zeros(p, c, n);
        for (l, &j) in self.complement.iter().enumerate() {
            pi.set(l, j, 1);
        }
        for (r, &j) in self.pivots.iter().enumerate() {
            for l in 0..c {
                pi.set(l, j, (p - k.get(l, r)) % p);
            }
        }
        pi
    }

    /// Whether `iota` (dim W × dim V) restricts to the identity on W.
    pub fn is_retraction(&self, iota: &Matrix) -> bool {
        iota.rows() == self.dim()
            && iota.cols() == self.ambient.dim()
            && iota.mul(&self.inclusion) == Matrix::identity(self.ambient.p(), self.dim())
    }

    /// The retraction that reads off the pivot coordinates.
    pub fn pivot_retraction(&self) -> Matrix {
        let p = self.ambient.p();
        let n = self.ambient.dim();
        let m = self.dim();
        if m == 0 {
            return Matrix::zeros(p, 0, n);
        }
        let ip_inv = inclusion_rows(&self.inclusion, &self.pivots)
            .inverse()
            .unwrap();
        let mut sel = Matrix::zeros(p, m, n);
        for (r, &j) in self.pivots.iter().enumerate() {
            sel.set(r, j, 1);
        }
        ip_inv.mul(&sel)
    }

    pub fn entry(&self, i: usize, j: usize) -> Poly {
        Poly::constant(self.ambient.p(), self.inclusion.get(i, j) as i64)
    }
}

fn inclusion_rows(m: &Matrix, rows: &[usize]) -> Matrix {
    let p = m.characteristic();
    let data: Vec<Vec<u32>> = rows.iter().map(|&r| m.row(r).to_vec()).collect();
    if data.is_empty() {
        return Matrix::zeros(p, 0, m.cols());
    }
    Matrix::from_rows(p, &data)
}
