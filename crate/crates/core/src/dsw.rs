//! Dynkin-Specht-Wever elements, their quasi-idempotency, the idempotent
//! pair for odd n, and the image model realizing the projector
//! factorization i * p at the linear-algebra level.

use num_rational::Rational64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lie::{lyndon_bracketing, lyndon_words};
use crate::linalg::{solve_in_basis, Mat};
use crate::perm::{GroupRingElement, Permutation};
use crate::scalar::{LocalRational, Ring};
use crate::tensor::{FreeVector, Generator, TensorTerm};

/// The Dynkin-Specht-Wever element of Z_(2)(S_n):
/// beta_1 = 1, beta_2 = 1 - (1,2), and
/// beta_n = beta_{n-1}^id - (1,2,...,n) . beta_{n-1}^id,
/// where ^id embeds S_{n-1} into S_n fixing the last letter.
pub fn beta(n: usize) -> GroupRingElement {
    assert!(n >= 1);
    let mut b = GroupRingElement::identity(1);
    for m in 2..=n {
        let embedded = b.embed();
        let full_cycle = GroupRingElement::from_permutation(
            Permutation::cycle(m, &(1..=m).collect::<Vec<_>>()).expect("full cycle"),
        );
        let rotated = full_cycle.convolve(&embedded).expect("same n");
        b = embedded.sub(&rotated).expect("same n");
    }
    b
}

/// Outcome of checking beta_n * beta_n = n * beta_n in the group ring.
/// A failure is a report, not a crash: it is the designated detector for
/// a broken composition or action convention.
#[derive(Debug, Clone, Serialize)]
pub struct SquareReport {
    pub n: usize,
    pub holds: bool,
    /// beta_n^2 - n beta_n when nonzero.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub defect: Option<GroupRingElement>,
}

pub fn verify_square(n: usize) -> SquareReport {
    let b = beta(n);
    let square = b.convolve(&b).expect("same n");
    let expected = b.scale(LocalRational::integer(n as i64));
    let defect = square.sub(&expected).expect("same n");
    SquareReport {
        n,
        holds: defect.is_zero(),
        defect: (!defect.is_zero()).then_some(defect),
    }
}

/// The operator form of the same identity on a concrete module: checks
/// beta(beta(w)) = n beta(w) over Z_(2) for every length-n word over the
/// given generators.
pub fn verify_square_on_module(n: usize, gens: &[Generator]) -> bool {
    let b = beta(n);
    let scale = LocalRational::integer(n as i64);
    ambient_words(gens, n).into_iter().all(|w| {
        let v = FreeVector::single(Ring::Z2Local, w);
        let bv = b.apply_seq(&v).expect("arity");
        b.apply_seq(&bv).expect("arity") == bv.scale(scale)
    })
}

/// The idempotent e = (1/n) beta_n together with its complement 1 - e.
#[derive(Debug, Clone, Serialize)]
pub struct ProjectorPair {
    pub n: usize,
    pub e: GroupRingElement,
    pub complement: GroupRingElement,
}

pub fn idempotent_pair(n: usize) -> Result<ProjectorPair> {
    if n % 2 == 0 {
        return Err(Error::NotInvertible(n as i64));
    }
    let e = beta(n).scale(LocalRational::new(1, n as i64)?);
    let complement = GroupRingElement::identity(n).sub(&e)?;
    Ok(ProjectorPair { n, e, complement })
}

/// The image of the idempotent inside the span of all suspended length-n
/// words, together with the inclusion/projection factorization of its
/// matrix.
#[derive(Debug, Clone)]
pub struct ImageModel {
    pub n: usize,
    pub ring: Ring,
    /// All (dim V)^n suspended words, in canonical order.
    pub ambient: Vec<TensorTerm>,
    /// Bracket expansions of Lyndon words, in lexicographic word order.
    pub basis: Vec<FreeVector>,
    /// ambient x rank; embeds basis vectors back into the ambient span.
    pub inclusion: Mat,
    /// rank x ambient; expresses e(w) in the basis.
    pub projection: Mat,
    /// ambient x ambient matrix of e itself.
    pub e_matrix: Mat,
}

impl ImageModel {
    pub fn rank(&self) -> usize {
        self.basis.len()
    }
}

/// All length-n words over the generators, suspended, in graded-lex order.
pub fn ambient_words(gens: &[Generator], n: usize) -> Vec<TensorTerm> {
    let mut sorted = gens.to_vec();
    sorted.sort();
    let q = sorted.len();
    let count = q.pow(n as u32);
    (0..count)
        .map(|mut idx| {
            let mut letters = vec![sorted[0].clone(); n];
            for pos in (0..n).rev() {
                letters[pos] = sorted[idx % q].clone();
                idx /= q;
            }
            TensorTerm::suspended_word(letters)
        })
        .collect()
}

pub fn image_model(n: usize, gens: &[Generator], ring: Ring) -> Result<ImageModel> {
    image_model_impl(n, gens, ring, true)
}

/// Sequential reference implementation of `image_model`.
pub fn image_model_seq(n: usize, gens: &[Generator], ring: Ring) -> Result<ImageModel> {
    image_model_impl(n, gens, ring, false)
}

fn image_model_impl(n: usize, gens: &[Generator], ring: Ring, parallel: bool) -> Result<ImageModel> {
    if n % 2 == 0 {
        return Err(Error::NotInvertible(n as i64));
    }
    let mut sorted = gens.to_vec();
    sorted.sort();

    let ambient = ambient_words(&sorted, n);
    let index: std::collections::BTreeMap<&TensorTerm, usize> =
        ambient.iter().enumerate().map(|(i, t)| (t, i)).collect();

    // over F_2 the prefactor 1/n is invisible, so e acts as beta_n
    let operator = match ring {
        Ring::Z2Local => idempotent_pair(n)?.e,
        Ring::F2 => beta(n),
    };

    let apply_to_word = |w: &TensorTerm| -> Result<Vec<LocalRational>> {
        let image = operator.apply_seq(&FreeVector::single(ring, w.clone()))?;
        let mut col = vec![LocalRational::zero(); ambient.len()];
        for (t, c) in image.iter() {
            col[*index.get(t).expect("image stays in the ambient span")] = *c;
        }
        Ok(col)
    };

    let e_columns: Vec<Vec<LocalRational>> = run_columns(&ambient, apply_to_word, parallel)?;

    // basis: expansions of the standard bracketings of Lyndon words
    let words = lyndon_words(sorted.len(), n);
    let mut basis = Vec::with_capacity(words.len());
    let mut basis_columns = Vec::with_capacity(words.len());
    for w in &words {
        let tree = lyndon_bracketing(w, &sorted)?;
        let vec = tree.expand(ring).suspend()?;
        let mut col = vec![LocalRational::zero(); ambient.len()];
        for (t, c) in vec.iter() {
            col[*index.get(t).expect("expansion stays in the ambient span")] = *c;
        }
        basis.push(vec);
        basis_columns.push(col);
    }

    let rank = basis.len();
    let inclusion = Mat::from_fn(ambient.len(), rank, |i, j| basis_columns[j][i]);

    let projection = match ring {
        Ring::F2 => {
            let b: Vec<Vec<bool>> = basis_columns
                .iter()
                .map(|col| col.iter().map(LocalRational::mod2).collect())
                .collect();
            let e: Vec<Vec<bool>> = e_columns
                .iter()
                .map(|col| col.iter().map(LocalRational::mod2).collect())
                .collect();
            let coords = solve_in_basis(&b, &e)?;
            Mat::from_fn(rank, ambient.len(), |i, j| {
                if coords[j][i] {
                    LocalRational::one()
                } else {
                    LocalRational::zero()
                }
            })
        }
        Ring::Z2Local => {
            let to_q = |x: &LocalRational| Rational64::new(x.numerator(), x.denominator());
            let b: Vec<Vec<Rational64>> = basis_columns
                .iter()
                .map(|col| col.iter().map(to_q).collect())
                .collect();
            let e: Vec<Vec<Rational64>> = e_columns
                .iter()
                .map(|col| col.iter().map(to_q).collect())
                .collect();
            let coords = solve_in_basis(&b, &e)?;
            let mut out = Mat::zeros(rank, ambient.len());
            for (j, col) in coords.iter().enumerate() {
                for (i, q) in col.iter().enumerate() {
                    // the image is a direct summand over Z_(2); coordinates
                    // of e(w) must come out 2-local
                    out.set(i, j, LocalRational::new(*q.numer(), *q.denom())?);
                }
            }
            out
        }
    };

    let e_matrix = Mat::from_fn(ambient.len(), ambient.len(), |i, j| e_columns[j][i]);

    Ok(ImageModel {
        n,
        ring,
        ambient,
        basis,
        inclusion,
        projection,
        e_matrix,
    })
}

fn run_columns(
    ambient: &[TensorTerm],
    f: impl Fn(&TensorTerm) -> Result<Vec<LocalRational>> + Sync,
    parallel: bool,
) -> Result<Vec<Vec<LocalRational>>> {
    #[cfg(feature = "parallel")]
    if parallel {
        use rayon::prelude::*;
        return ambient.par_iter().map(&f).collect();
    }
    let _ = parallel;
    ambient.iter().map(f).collect()
}

/// apply(beta_n, i1 ⊗ x_1 ⊗ … ⊗ x_n); by the Dynkin-Specht-Wever identity
/// this is the expansion of the left-normed bracket of the letters.
pub fn dsw_bracket_image(letters: &[Generator], ring: Ring) -> Result<FreeVector> {
    if letters.is_empty() {
        return Err(Error::EmptyBracket);
    }
    let word = FreeVector::single(ring, TensorTerm::suspended_word(letters.to_vec()));
    beta(letters.len()).apply(&word)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie;
    use crate::lie::left_normed;
    use crate::scalar::LocalRational;

    #[test]
    fn beta_base_cases() {
        assert_eq!(beta(1), GroupRingElement::identity(1));
        let t = GroupRingElement::from_permutation(Permutation::cycle(2, &[1, 2]).unwrap());
        assert_eq!(beta(2), GroupRingElement::identity(2).sub(&t).unwrap());
    }

    #[test]
    fn beta_three_expansion() {
        let b = beta(3);
        let one = LocalRational::one();
        assert_eq!(b.len(), 4);
        assert_eq!(b.coeff(&Permutation::identity(3)), one);
        assert_eq!(b.coeff(&Permutation::cycle(3, &[1, 2]).unwrap()), -one);
        assert_eq!(b.coeff(&Permutation::cycle(3, &[1, 2, 3]).unwrap()), -one);
        assert_eq!(b.coeff(&Permutation::cycle(3, &[1, 3]).unwrap()), one);
    }

    #[test]
    fn beta_term_count_and_unit_coefficients() {
        for n in 1..=12usize {
            let b = beta(n);
            assert_eq!(b.len(), 1 << (n - 1), "n = {n}");
            assert!(b
                .iter()
                .all(|(_, c)| c.denominator() == 1 && c.numerator().abs() == 1));
        }
    }

    #[test]
    fn square_identity_small() {
        for n in 1..=6 {
            let report = verify_square(n);
            assert!(report.holds, "beta_{n}^2 != {n} beta_{n}");
            assert!(report.defect.is_none());
        }
    }

    #[test]
    fn operator_square_identity() {
        let gens = vec![
            Generator::new("u", 1).unwrap(),
            Generator::new("v", 2).unwrap(),
        ];
        for n in 2..=5 {
            assert!(verify_square_on_module(n, &gens));
        }
    }

    #[test]
    fn idempotent_pair_examples() {
        let pair = idempotent_pair(3).unwrap();
        let e = &pair.e;
        assert_eq!(e.convolve(e).unwrap(), *e);
        assert!(e.convolve(&pair.complement).unwrap().is_zero());
        assert!(pair.complement.convolve(e).unwrap().is_zero());
        assert_eq!(
            e.add(&pair.complement).unwrap(),
            GroupRingElement::identity(3)
        );

        assert!(idempotent_pair(2).is_err());

        let unit = idempotent_pair(1).unwrap();
        assert_eq!(unit.e, GroupRingElement::identity(1));
        assert!(unit.complement.is_zero());
    }

    fn uv() -> Vec<Generator> {
        vec![
            Generator::new("u", 1).unwrap(),
            Generator::new("v", 2).unwrap(),
        ]
    }

    #[test]
    fn bracket_image_matches_left_normed() {
        let gens = uv();
        let letters = [gens[0].clone(), gens[1].clone(), gens[0].clone()];
        for ring in [Ring::Z2Local, Ring::F2] {
            let lhs = dsw_bracket_image(&letters, ring).unwrap();
            let rhs = lie::left_normed(&letters).unwrap().expand(ring).suspend().unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn bracket_image_kills_uuv() {
        let gens = uv();
        let letters = [gens[0].clone(), gens[0].clone(), gens[1].clone()];
        assert!(dsw_bracket_image(&letters, Ring::F2).unwrap().is_zero());
    }

    #[test]
    fn image_model_small_ranks() {
        let gens = uv();
        let m1 = image_model(1, &gens, Ring::F2).unwrap();
        assert_eq!(m1.rank(), 2);
        let m3 = image_model(3, &gens, Ring::F2).unwrap();
        assert_eq!(m3.rank(), 2);
        let m5 = image_model(5, &gens, Ring::F2).unwrap();
        assert_eq!(m5.rank(), 6);
        assert!(image_model(2, &gens, Ring::F2).is_err());
    }

    #[test]
    fn image_model_factorization_n3_both_rings() {
        let gens = uv();
        for ring in [Ring::F2, Ring::Z2Local] {
            let m = image_model(3, &gens, ring).unwrap();
            let composite = m.inclusion.mul(&m.projection).unwrap();
            assert_eq!(composite, m.e_matrix, "i*p != e over {ring}");
            let id = m.projection.mul(&m.inclusion).unwrap();
            assert_eq!(id, Mat::identity(m.rank()), "p*i != id over {ring}");
        }
    }

    #[test]
    fn image_model_seq_matches_parallel() {
        let gens = uv();
        let a = image_model(5, &gens, Ring::F2).unwrap();
        let b = image_model_seq(5, &gens, Ring::F2).unwrap();
        assert_eq!(a.e_matrix, b.e_matrix);
        assert_eq!(a.projection, b.projection);
    }

    #[test]
    fn n3_basis_is_the_two_bracket_expansions() {
        let gens = uv();
        let m = image_model(3, &gens, Ring::F2).unwrap();
        let b1 = lie::left_normed(&[gens[0].clone(), gens[1].clone(), gens[0].clone()])
            .unwrap()
            .expand(Ring::F2)
            .suspend()
            .unwrap();
        let b2 = lie::left_normed(&[gens[0].clone(), gens[1].clone(), gens[1].clone()])
            .unwrap()
            .expand(Ring::F2)
            .suspend()
            .unwrap();
        assert_eq!(m.basis, vec![b1, b2]);
    }

    #[test]
    fn left_normed_module_use() {
        // the Lyndon bracketing [u,[u,v]] expands like [[u,v],u] mod 2
        let gens = uv();
        let lb = lyndon_bracketing(&[0, 0, 1], &gens).unwrap().expand(Ring::F2);
        let ln = left_normed(&[gens[0].clone(), gens[1].clone(), gens[0].clone()])
            .unwrap()
            .expand(Ring::F2);
        assert_eq!(lb, ln);
    }
}
