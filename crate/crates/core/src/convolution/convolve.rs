use crate::arrangement::{
    is_good_line, parallel_subarrangement, shifted_family, Arrangement, Hyperplane, LineDirection,
};
use crate::error::{Error, Result};
use crate::linalg::QMatrix;
use crate::pfaffian::{check_integrability, ConvolutionParameter, PfaffianSystem};
use crate::rational::q;

/// Output of the additive convolution along a line.
///
/// Vectors of `E ⊗ C^n` are laid out block by block: coordinate
/// `p * dim_e + i` is the `i`-th entry of the block of the `p`-th hyperplane
/// in `block_order`.
#[derive(Clone, Debug)]
pub struct ConvolutionResult {
    pub system: PfaffianSystem,
    /// Labels of `A \ A_Y` in block order (sorted by canonical form).
    pub block_order: Vec<String>,
    pub k_basis: QMatrix,
    pub l_basis: QMatrix,
}

impl ConvolutionResult {
    pub fn n(&self) -> usize {
        self.block_order.len()
    }
}

/// `A \ A_Y` as arrangement indices sorted by canonical form.
pub fn block_order(arr: &Arrangement, y: &LineDirection) -> Result<Vec<usize>> {
    let mut t = parallel_subarrangement(arr, y)?.transverse;
    t.sort_by(|&a, &b| arr.get(a).cmp(arr.get(b)));
    Ok(t)
}

fn unit(n: usize, i: usize, j: usize) -> QMatrix {
    let mut e = QMatrix::zeros(n, n);
    e[(i, j)] = q(1);
    e
}

/// `c_lambda` without the goodness and integrability preconditions; any
/// shifted hyperplane missing from the arrangement is appended.
pub fn convolve_unchecked(
    sys: &PfaffianSystem,
    y: &LineDirection,
    lam: &ConvolutionParameter,
) -> Result<(PfaffianSystem, Vec<usize>)> {
    let arr = sys.arrangement();
    let order = block_order(arr, y)?;
    let n = order.len();
    if n == 0 {
        return Err(Error::Invalid(
            "no hyperplane is transverse to the line".into(),
        ));
    }
    let d = sys.dim_e();
    let pos = |i: usize| order.iter().position(|&j| j == i);
    let id_e = QMatrix::identity(d);

    let mut residues: Vec<QMatrix> = (0..arr.len())
        .map(|i| match pos(i) {
            Some(p) => {
                let mut m = QMatrix::zeros(n * d, n * d);
                for (p2, &j) in order.iter().enumerate() {
                    let mut block = sys.residue(j).clone();
                    if p2 == p {
                        block = &block + &id_e.scale(lam.lambda());
                    }
                    m = &m + &unit(n, p, p2).kron(&block);
                }
                m
            }
            None => QMatrix::identity(n).kron(sys.residue(i)),
        })
        .collect();

    let mut hyperplanes: Vec<Hyperplane> = arr.hyperplanes().to_vec();
    for sh in shifted_family(arr, y)? {
        let mut m = QMatrix::zeros(n * d, n * d);
        for &(h1, h2) in &sh.pairs {
            let (p1, p2) = (pos(h1).unwrap(), pos(h2).unwrap());
            let e1 = &unit(n, p2, p2) - &unit(n, p2, p1);
            let e2 = &unit(n, p1, p1) - &unit(n, p1, p2);
            m = &(&m + &e1.kron(sys.residue(h1))) + &e2.kron(sys.residue(h2));
        }
        match sh.member {
            Some(i) => residues[i] = &residues[i] + &m,
            None => {
                hyperplanes.push(sh.hyperplane.clone());
                residues.push(m);
            }
        }
    }
    let out_arr = if hyperplanes.len() == arr.len() {
        arr.clone()
    } else {
        Arrangement::new(arr.dim(), hyperplanes)?
    };
    Ok((
        PfaffianSystem::new_unchecked(out_arr, n * d, residues)?,
        order,
    ))
}

/// `K = ⊕_H Ker A_H ⊗ e_H` and `L = Ker(sum A_H + lambda) ⊗ sum e_H`, as
/// column bases in block layout.
pub fn kernel_subspaces(
    sys: &PfaffianSystem,
    y: &LineDirection,
    lam: &ConvolutionParameter,
) -> Result<(QMatrix, QMatrix)> {
    let order = block_order(sys.arrangement(), y)?;
    let n = order.len();
    let d = sys.dim_e();
    let mut k_cols: Vec<Vec<_>> = Vec::new();
    for (p, &i) in order.iter().enumerate() {
        let ker = sys.residue(i).kernel();
        for c in 0..ker.ncols() {
            let mut v = vec![q(0); n * d];
            for r in 0..d {
                v[p * d + r] = ker[(r, c)].clone();
            }
            k_cols.push(v);
        }
    }
    let mut total = QMatrix::scalar(d, lam.lambda());
    for &i in &order {
        total = &total + sys.residue(i);
    }
    let ker = total.kernel();
    let l_cols: Vec<Vec<_>> = (0..ker.ncols())
        .map(|c| (0..n * d).map(|idx| ker[(idx % d, c)].clone()).collect())
        .collect();
    let k = QMatrix::from_columns(&k_cols, n * d);
    let l = QMatrix::from_columns(&l_cols, n * d);
    if k.hstack(&l).rank() != k.ncols() + l.ncols() {
        return Err(Error::Internal("K and L intersect nontrivially".into()));
    }
    Ok((k, l))
}

/// Every residue maps every basis vector of `K ⊕ L` back into `K ⊕ L`.
pub fn subspace_invariant(sys: &PfaffianSystem, basis: &QMatrix) -> bool {
    if basis.ncols() == 0 {
        return true;
    }
    let r = basis.rank();
    sys.residues()
        .iter()
        .all(|a| basis.hstack(&(a * basis)).rank() == r)
}

fn check_preconditions(sys: &PfaffianSystem, y: &LineDirection) -> Result<()> {
    let integ = check_integrability(sys);
    if let Some((flat, h)) = integ.witness {
        return Err(Error::NonIntegrable {
            flat: flat.pretty(),
            hyperplane: sys.arrangement().get(h).label().to_string(),
        });
    }
    let good = is_good_line(sys.arrangement(), y)?;
    if let Some(w) = good.witness {
        return Err(Error::NotGoodLine {
            witness: w.pretty(),
        });
    }
    Ok(())
}

/// The convolution `c_lambda` along a good line.
pub fn convolve(
    sys: &PfaffianSystem,
    y: &LineDirection,
    lam: &ConvolutionParameter,
) -> Result<ConvolutionResult> {
    check_preconditions(sys, y)?;
    let (system, order) = convolve_unchecked(sys, y, lam)?;
    let (k_basis, l_basis) = kernel_subspaces(sys, y, lam)?;
    if !subspace_invariant(&system, &k_basis.hstack(&l_basis)) {
        return Err(Error::Internal(
            "K ⊕ L is not invariant under the convolution".into(),
        ));
    }
    Ok(ConvolutionResult {
        block_order: order
            .iter()
            .map(|&i| sys.arrangement().get(i).label().to_string())
            .collect(),
        system,
        k_basis,
        l_basis,
    })
}

/// Quotient presentation of a system by an invariant subspace.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub system: PfaffianSystem,
    /// Standard basis indices completing the subspace basis; their images
    /// form the basis of the quotient.
    pub complement: Vec<usize>,
}

/// Residues induced on `E / span(sub)`, with the quotient basis given by the
/// standard basis vectors chosen greedily in index order.
pub fn quotient_system(sys: &PfaffianSystem, sub: &QMatrix) -> Result<Quotient> {
    let n = sys.dim_e();
    let mut basis = sub.clone();
    let mut rank = basis.rank();
    if rank != sub.ncols() {
        return Err(Error::Internal("subspace basis is dependent".into()));
    }
    let r0 = rank;
    let mut complement = Vec::new();
    for j in 0..n {
        if rank == n {
            break;
        }
        let mut e = vec![q(0); n];
        e[j] = q(1);
        let cand = basis.hstack(&QMatrix::from_columns(&[e], n));
        if cand.rank() > rank {
            basis = cand;
            rank += 1;
            complement.push(j);
        }
    }
    let inv = basis
        .inverse()
        .ok_or_else(|| Error::Internal("completed basis is singular".into()))?;
    let keep: Vec<usize> = (r0..n).collect();
    let head: Vec<usize> = (0..r0).collect();
    let mut residues = Vec::with_capacity(sys.residues().len());
    for a in sys.residues() {
        let m = &(&inv * a) * &basis;
        if !m.submatrix(&keep, &head).is_zero() {
            return Err(Error::Internal("subspace is not invariant".into()));
        }
        residues.push(m.submatrix(&keep, &keep));
    }
    Ok(Quotient {
        system: PfaffianSystem::new_unchecked(sys.arrangement().clone(), n - r0, residues)?,
        complement,
    })
}

/// The middle convolution `mc_lambda`: `c_lambda` modulo `K ⊕ L`.
pub fn middle_convolve(
    sys: &PfaffianSystem,
    y: &LineDirection,
    lam: &ConvolutionParameter,
) -> Result<PfaffianSystem> {
    let conv = convolve(sys, y, lam)?;
    let sub = conv.k_basis.hstack(&conv.l_basis);
    Ok(quotient_system(&conv.system, &sub)?.system)
}

/// `n * dim_e - dim K - dim L`.
pub fn expected_mc_dim(
    sys: &PfaffianSystem,
    y: &LineDirection,
    lam: &ConvolutionParameter,
) -> Result<usize> {
    let order = block_order(sys.arrangement(), y)?;
    let (k, l) = kernel_subspaces(sys, y, lam)?;
    Ok(order.len() * sys.dim_e() - k.ncols() - l.ncols())
}
