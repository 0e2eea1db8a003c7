//! JSON wire formats. Complex scalars are `[re, im]` (a bare number reads as real),
//! matrices nested row arrays, and every index visible here is 1-based.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::cnum::{ComplexJson, Matrix, Tolerance, VecJson};
use crate::error::{Error, Result};
use crate::fqg::{FiniteQuantumGroup, Functional};
use crate::grouporacle::{closure, FiniteGroup, Permutation, Subgroup};
use crate::hopfimage::oracle::{character, evaluation, group_algebra_quotient, restriction};
use crate::hopfimage::SubgroupMap;
use crate::qfam::{QuantumFamily, QuantumSpace};
use crate::qinc::{IncreasingSequenceRep, MagicUnitaryRep};
use crate::scalar::{Real, C};
use crate::staralg::{StarAlgebra, StarHom, StateFunctional};

fn parse(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

/// Reads any of the formats below from a JSON string.
pub fn from_str<'a, J: Deserialize<'a>>(s: &'a str) -> Result<J> {
    serde_json::from_str(s).map_err(|e| parse(e.to_string()))
}

fn to_vec<T: Real>(v: &[ComplexJson]) -> Vec<C<T>> {
    v.iter().map(|z| z.to_c()).collect()
}

fn cast<T: Real>(m: &Matrix<f64>) -> Matrix<T> {
    m.map(|z| C::new(T::lit(z.re), T::lit(z.im)))
}

fn uncast<T: Real>(m: &Matrix<T>) -> Matrix<f64> {
    m.map(|z| C::new(z.re.to_f64().unwrap_or(f64::NAN), z.im.to_f64().unwrap_or(f64::NAN)))
}

/// `{"blocks": [m_i]}` or `{"dim", "mult", "unit", "inv"}` with `mult[p][k][l]` the
/// coefficient of `e_p` in `e_k e_l` and `(e_j)* = Σ_k inv[k][j] e_k`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged, deny_unknown_fields)]
pub enum AlgebraJson {
    Blocks { blocks: Vec<usize> },
    Structure { dim: usize, mult: Vec<Vec<VecJson>>, unit: VecJson, inv: Matrix<f64> },
}

impl AlgebraJson {
    pub fn build<T: Real>(&self, tol: &Tolerance<T>) -> Result<StarAlgebra<T>> {
        match self {
            Self::Blocks { blocks } => StarAlgebra::from_blocks(blocks),
            Self::Structure { dim, mult, unit, inv } => {
                let mult: Vec<Vec<Vec<C<T>>>> = mult.iter().map(|p| p.iter().map(VecJson::to_vec).collect()).collect();
                let unit = unit.to_vec();
                if unit.len() != *dim {
                    return Err(Error::Shape(format!("unit has {} coordinates, dim is {dim}", unit.len())));
                }
                StarAlgebra::from_structure(&mult, unit, &cast(inv), tol)
            }
        }
    }

    pub fn describe<T: Real>(a: &StarAlgebra<T>) -> Self {
        if let Some(b) = a.blocks() {
            return Self::Blocks { blocks: b.to_vec() };
        }
        let mult = a.structure_tensor().iter().map(|p| p.iter().map(|r| VecJson::from_slice(r)).collect()).collect();
        Self::Structure { dim: a.dim(), mult, unit: VecJson::from_slice(a.unit()), inv: uncast(&a.involution_matrix()) }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StateJson {
    pub coeffs: VecJson,
}

impl StateJson {
    pub fn build<T: Real>(&self) -> StateFunctional<T> {
        StateFunctional::new(self.coeffs.to_vec())
    }

    pub fn describe<T: Real>(s: &StateFunctional<T>) -> Self {
        Self { coeffs: VecJson::from_slice(&s.coeffs) }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SourceJson {
    pub algebra: AlgebraJson,
    pub state: StateJson,
}

/// Which basis of the source the coefficient matrix refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum BasisJson {
    /// The basis the algebra is given in.
    #[default]
    Raw,
    /// The φ-orthonormal basis.
    Onb,
}

/// `{"source": {algebra, state}, "index": algebra, "coeffs": [[element, …], …], "basis": "raw" | "onb"}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FamilyJson {
    pub source: SourceJson,
    pub index: AlgebraJson,
    pub coeffs: Vec<Vec<VecJson>>,
    #[serde(default)]
    pub basis: BasisJson,
}

impl FamilyJson {
    pub fn build<T: Real>(&self, tol: &Tolerance<T>) -> Result<QuantumFamily<T>> {
        let space = Arc::new(QuantumSpace::new(self.source.algebra.build(tol)?, self.source.state.build(), tol)?);
        let index = Arc::new(self.index.build(tol)?);
        let coeffs = self.coeffs.iter().map(|r| r.iter().map(VecJson::to_vec).collect()).collect();
        match self.basis {
            BasisJson::Raw => QuantumFamily::from_raw(space, index, coeffs),
            BasisJson::Onb => QuantumFamily::new(space, index, coeffs),
        }
    }

    pub fn describe<T: Real>(f: &QuantumFamily<T>) -> Self {
        let raw = f.to_raw();
        Self {
            source: SourceJson { algebra: AlgebraJson::describe(&f.space().algebra), state: StateJson::describe(&f.space().phi) },
            index: AlgebraJson::describe(f.index()),
            coeffs: raw.iter().map(|r| r.iter().map(|x| VecJson::from_slice(x)).collect()).collect(),
            basis: BasisJson::Raw,
        }
    }
}

/// A permutation as a 1-based image list or in cycle notation.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PermJson {
    Images(Vec<usize>),
    Cycles(String),
}

impl PermJson {
    fn build(&self, degree: usize) -> Result<Permutation> {
        match self {
            Self::Images(v) => Permutation::from_one_based(v),
            Self::Cycles(s) => Permutation::from_cycles(s, degree),
        }
    }

    fn max_point(&self) -> usize {
        match self {
            Self::Images(v) => v.len(),
            Self::Cycles(s) => s.split(|c: char| !c.is_ascii_digit()).filter_map(|t| t.parse().ok()).max().unwrap_or(1),
        }
    }
}

/// `{"cayley": [[..]]}` (1-based entries, element 1 need not be the identity),
/// `{"permutation_generators": [..], "degree"?: n}`, or a named family.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged, deny_unknown_fields)]
pub enum GroupJson {
    Cayley {
        cayley: Vec<Vec<usize>>,
    },
    Permutations {
        permutation_generators: Vec<PermJson>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        degree: Option<usize>,
    },
    Cyclic {
        cyclic: usize,
    },
    Symmetric {
        symmetric: usize,
    },
    Dihedral {
        dihedral: usize,
    },
    Product {
        direct_product: Vec<GroupJson>,
    },
}

impl GroupJson {
    pub fn build(&self) -> Result<FiniteGroup> {
        match self {
            Self::Cayley { cayley } => {
                let zero_based = cayley
                    .iter()
                    .map(|r| r.iter().map(|&x| x.checked_sub(1).ok_or_else(|| parse("Cayley entries are 1-based"))).collect::<Result<Vec<_>>>())
                    .collect::<Result<Vec<_>>>()?;
                FiniteGroup::from_cayley(zero_based)
            }
            Self::Permutations { permutation_generators, degree } => {
                let deg = degree.unwrap_or_else(|| permutation_generators.iter().map(PermJson::max_point).max().unwrap_or(1));
                let gens = permutation_generators.iter().map(|p| p.build(deg)).collect::<Result<Vec<_>>>()?;
                if gens.is_empty() {
                    return FiniteGroup::symmetric(1);
                }
                closure(&gens)
            }
            Self::Cyclic { cyclic } => FiniteGroup::cyclic(*cyclic),
            Self::Symmetric { symmetric } => FiniteGroup::symmetric(*symmetric),
            Self::Dihedral { dihedral } => FiniteGroup::dihedral(*dihedral),
            Self::Product { direct_product } => {
                let parts = direct_product.iter().map(GroupJson::build).collect::<Result<Vec<_>>>()?;
                let (first, rest) = parts.split_first().ok_or_else(|| parse("empty direct product"))?;
                Ok(rest.iter().fold(first.clone(), |acc, g| FiniteGroup::direct_product(&acc, g)))
            }
        }
    }
}

/// A group element: 1-based index or, for permutation groups, cycle notation.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ElementJson {
    Index(usize),
    Cycles(String),
}

impl ElementJson {
    pub fn resolve(&self, g: &FiniteGroup) -> Result<usize> {
        match self {
            Self::Index(i) if (1..=g.order()).contains(i) => Ok(i - 1),
            Self::Index(i) => Err(parse(format!("element index {i} outside 1..={}", g.order()))),
            Self::Cycles(s) => {
                let perms = g.permutations().ok_or_else(|| parse("cycle notation needs a permutation group"))?;
                let p = Permutation::from_cycles(s, perms[0].degree())?;
                g.index_of(&p).ok_or_else(|| parse(format!("{s} is not in the group")))
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged, deny_unknown_fields)]
pub enum FqgJson {
    FunctionAlgebra {
        function_algebra_of: GroupJson,
    },
    GroupAlgebra {
        group_algebra_of: GroupJson,
    },
    Explicit {
        algebra: AlgebraJson,
        delta: Matrix<f64>,
        counit: VecJson,
        antipode: Matrix<f64>,
        haar: VecJson,
    },
}

/// How a loaded quantum group arose, kept for oracle cross-checks.
#[derive(Clone, Debug)]
pub enum Origin {
    FunctionAlgebra(FiniteGroup),
    GroupAlgebra(FiniteGroup),
    Explicit,
}

#[derive(Clone, Debug)]
pub struct LoadedFqg<T: Real> {
    pub q: FiniteQuantumGroup<T>,
    pub origin: Origin,
}

impl FqgJson {
    pub fn build<T: Real>(&self, tol: &Tolerance<T>) -> Result<LoadedFqg<T>> {
        match self {
            Self::FunctionAlgebra { function_algebra_of } => {
                let g = function_algebra_of.build()?;
                Ok(LoadedFqg { q: FiniteQuantumGroup::function_algebra(&g), origin: Origin::FunctionAlgebra(g) })
            }
            Self::GroupAlgebra { group_algebra_of } => {
                let g = group_algebra_of.build()?;
                Ok(LoadedFqg { q: FiniteQuantumGroup::group_algebra(&g), origin: Origin::GroupAlgebra(g) })
            }
            Self::Explicit { algebra, delta, counit, antipode, haar } => {
                let alg = Arc::new(algebra.build(tol)?);
                let q = FiniteQuantumGroup::new_checked(alg, cast(delta), counit.to_vec(), cast(antipode), Functional::new(haar.to_vec()), tol)?;
                Ok(LoadedFqg { q, origin: Origin::Explicit })
            }
        }
    }

    pub fn describe<T: Real>(q: &FiniteQuantumGroup<T>) -> Self {
        Self::Explicit {
            algebra: AlgebraJson::describe(q.alg()),
            delta: uncast(q.delta()),
            counit: VecJson::from_slice(q.counit()),
            antipode: uncast(q.antipode()),
            haar: VecJson::from_slice(&q.haar().coeffs),
        }
    }
}

/// A map out of a loaded quantum group: explicit, or one of the group-derived shorthands.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged, deny_unknown_fields)]
pub enum HomJson {
    Explicit { target: AlgebraJson, matrix: Matrix<f64> },
    Evaluation { evaluation: ElementJson },
    Character { character: Vec<ComplexJson> },
    Counit { counit: bool },
    Identity { identity: bool },
    DirectSum { direct_sum: Vec<HomJson> },
    Restriction { restriction_to: Vec<ElementJson> },
    Quotient { quotient_by: Vec<ElementJson> },
    Subgroup { subgroup: Box<FqgJson>, matrix: Matrix<f64> },
}

impl HomJson {
    pub fn build<T: Real>(&self, host: &LoadedFqg<T>, tol: &Tolerance<T>) -> Result<StarHom<T>> {
        let alg = host.q.alg();
        match self {
            Self::Explicit { target, matrix } => StarHom::new(alg.clone(), Arc::new(target.build(tol)?), cast(matrix)),
            Self::Evaluation { evaluation: e } => match &host.origin {
                Origin::FunctionAlgebra(g) => evaluation(alg, e.resolve(g)?),
                _ => Err(parse("evaluation maps need a host of the form C(G)")),
            },
            Self::Character { character: v } => character(alg, &to_vec(v)),
            Self::Counit { .. } => character(alg, host.q.counit()),
            Self::Identity { .. } => Ok(StarHom::identity(alg.clone())),
            Self::DirectSum { direct_sum } => {
                let parts = direct_sum.iter().map(|h| h.build(host, tol)).collect::<Result<Vec<_>>>()?;
                crate::hopfimage::oracle::direct_sum_hom(&parts.iter().collect::<Vec<_>>())
            }
            Self::Restriction { .. } | Self::Quotient { .. } | Self::Subgroup { .. } => Ok(self.subgroup_map(host, tol)?.hom),
        }
    }

    /// Subgroup maps: restrictions of `C(G)`, quotients of `C*(Γ)`, or explicit morphisms.
    pub fn subgroup_map<T: Real>(&self, host: &LoadedFqg<T>, tol: &Tolerance<T>) -> Result<SubgroupMap<T>> {
        match (self, &host.origin) {
            (Self::Restriction { restriction_to }, Origin::FunctionAlgebra(g)) => {
                let h = subgroup_of(g, restriction_to, false)?;
                restriction(&host.q, g, &h)
            }
            (Self::Quotient { quotient_by }, Origin::GroupAlgebra(g)) => {
                let n = subgroup_of(g, quotient_by, true)?;
                group_algebra_quotient(&host.q, g, &n)
            }
            (Self::Subgroup { subgroup, matrix }, _) => {
                let h = subgroup.build(tol)?.q;
                let hom = StarHom::new(host.q.alg().clone(), h.alg().clone(), cast(matrix))?;
                Ok(SubgroupMap { hom, group: h })
            }
            (Self::Restriction { .. }, _) => Err(parse("restriction_to needs a host of the form C(G)")),
            (Self::Quotient { .. }, _) => Err(parse("quotient_by needs a host of the form C*(Γ)")),
            _ => Err(parse("not a subgroup map (use restriction_to, quotient_by or subgroup)")),
        }
    }

    /// The group-theoretic subgroup behind a shorthand map, when there is one.
    pub fn oracle_subgroup(&self, host_origin: &Origin) -> Result<Option<Subgroup>> {
        match (self, host_origin) {
            (Self::Restriction { restriction_to }, Origin::FunctionAlgebra(g)) => Ok(Some(subgroup_of(g, restriction_to, false)?)),
            (Self::Quotient { quotient_by }, Origin::GroupAlgebra(g)) => Ok(Some(subgroup_of(g, quotient_by, true)?)),
            _ => Ok(None),
        }
    }
}

fn subgroup_of(g: &FiniteGroup, gens: &[ElementJson], normal: bool) -> Result<Subgroup> {
    let idx = gens.iter().map(|e| e.resolve(g)).collect::<Result<Vec<_>>>()?;
    Ok(if normal { g.normal_closure(&idx) } else { g.subgroup_generated(&idx) })
}

/// `{"n", "k", "d", "v": [[matrix; k]; n]}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RepJson {
    pub n: usize,
    pub k: usize,
    pub d: usize,
    pub v: Vec<Vec<Matrix<f64>>>,
}

impl RepJson {
    pub fn build<T: Real>(&self) -> Result<IncreasingSequenceRep<T>> {
        if self.v.len() != self.n || self.v.iter().any(|r| r.len() != self.k) {
            return Err(Error::Shape(format!("v must be {}x{}", self.n, self.k)));
        }
        IncreasingSequenceRep::new(self.n, self.k, self.d, self.v.iter().flatten().map(cast).collect())
    }

    pub fn describe<T: Real>(r: &IncreasingSequenceRep<T>) -> Self {
        let v = (0..r.n()).map(|i| (0..r.k()).map(|j| uncast(r.v(i, j))).collect()).collect();
        Self { n: r.n(), k: r.k(), d: r.d(), v }
    }
}

/// `{"n", "d", "p": [[matrix; n]; n]}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MagicJson {
    pub n: usize,
    pub d: usize,
    pub p: Vec<Vec<Matrix<f64>>>,
}

impl MagicJson {
    pub fn build<T: Real>(&self) -> Result<MagicUnitaryRep<T>> {
        if self.p.len() != self.n || self.p.iter().any(|r| r.len() != self.n) {
            return Err(Error::Shape(format!("p must be {0}x{0}", self.n)));
        }
        MagicUnitaryRep::new(self.n, self.d, self.p.iter().flatten().map(cast).collect())
    }

    pub fn describe<T: Real>(u: &MagicUnitaryRep<T>) -> Self {
        let p = (0..u.n()).map(|i| (0..u.n()).map(|j| uncast(u.entry(i, j))).collect()).collect();
        Self { n: u.n(), d: u.d(), p }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qfam::check_family;

    fn tol() -> Tolerance<f64> {
        Tolerance::default()
    }

    #[test]
    fn algebra_round_trip() {
        let a: AlgebraJson = from_str(r#"{"blocks": [1, 2]}"#).unwrap();
        let alg = a.build::<f64>(&tol()).unwrap();
        assert_eq!(alg.dim(), 5);
        let g = FiniteGroup::cyclic(3).unwrap();
        let q = FiniteQuantumGroup::<f64>::group_algebra(&g);
        let s = serde_json::to_string(&AlgebraJson::describe(q.alg())).unwrap();
        let back = from_str::<AlgebraJson>(&s).unwrap().build::<f64>(&tol()).unwrap();
        assert_eq!(back.structure_tensor(), q.alg().structure_tensor());
    }

    #[test]
    fn groups_from_every_format() {
        let by_cycles: GroupJson = from_str(r#"{"permutation_generators": ["(1 2)", "(1 2 3)"]}"#).unwrap();
        assert_eq!(by_cycles.build().unwrap().order(), 6);
        let by_images: GroupJson = from_str(r#"{"permutation_generators": [[2, 1, 3, 4], [1, 2, 4, 3]]}"#).unwrap();
        assert_eq!(by_images.build().unwrap().order(), 4);
        let cayley: GroupJson = from_str(r#"{"cayley": [[1, 2], [2, 1]]}"#).unwrap();
        assert_eq!(cayley.build().unwrap().order(), 2);
        assert!(from_str::<GroupJson>(r#"{"cayley": [[0, 1], [1, 0]]}"#).unwrap().build().is_err());
        let prod: GroupJson = from_str(r#"{"direct_product": [{"cyclic": 2}, {"cyclic": 3}]}"#).unwrap();
        assert_eq!(prod.build().unwrap().order(), 6);
    }

    #[test]
    fn fqg_round_trip_through_explicit_form() {
        let j: FqgJson = from_str(r#"{"function_algebra_of": {"symmetric": 3}}"#).unwrap();
        let loaded = j.build::<f64>(&tol()).unwrap();
        let s = serde_json::to_string(&FqgJson::describe(&loaded.q)).unwrap();
        let back = from_str::<FqgJson>(&s).unwrap().build::<f64>(&tol()).unwrap();
        assert!(back.q.delta().max_diff(loaded.q.delta()) == 0.0);
        assert!(matches!(back.origin, Origin::Explicit));
    }

    #[test]
    fn homs_resolve_against_the_host() {
        let host = from_str::<FqgJson>(r#"{"function_algebra_of": {"symmetric": 3}}"#).unwrap().build::<f64>(&tol()).unwrap();
        let ev: HomJson = from_str(r#"{"evaluation": "(1 2)"}"#).unwrap();
        assert_eq!(ev.build(&host, &tol()).unwrap().matrix.rows(), 1);
        let sum: HomJson = from_str(r#"{"direct_sum": [{"evaluation": 2}, {"counit": true}]}"#).unwrap();
        assert_eq!(sum.build(&host, &tol()).unwrap().target.dim(), 2);
        let res: HomJson = from_str(r#"{"restriction_to": ["(1 2)"]}"#).unwrap();
        assert_eq!(res.subgroup_map(&host, &tol()).unwrap().group.dim(), 2);
        let quo: HomJson = from_str(r#"{"quotient_by": [2]}"#).unwrap();
        assert!(quo.subgroup_map(&host, &tol()).is_err());
        assert!(from_str::<HomJson>(r#"{"evaluation": "(1 4)"}"#).unwrap().build(&host, &tol()).is_err());
    }

    #[test]
    fn family_json_raw_and_onb_agree() {
        let text = r#"{
            "source": {"algebra": {"blocks": [1, 1]}, "state": {"coeffs": [0.5, 0.5]}},
            "index": {"blocks": [1]},
            "coeffs": [[[0], [1]], [[1], [0]]]
        }"#;
        let j: FamilyJson = from_str(text).unwrap();
        let f = j.build::<f64>(&tol()).unwrap();
        assert!(check_family(&f, &tol()).passes(&tol()));
        let again = FamilyJson::describe(&f);
        let g = again.build::<f64>(&tol()).unwrap();
        assert_eq!(f.to_raw(), g.to_raw());
    }

    #[test]
    fn rep_json_shape_is_checked() {
        let ok: RepJson = from_str(r#"{"n": 2, "k": 1, "d": 1, "v": [[[[1]]], [[[0]]]]}"#).unwrap();
        assert!(ok.build::<f64>().unwrap().validate().passes(&tol()));
        let bad: RepJson = from_str(r#"{"n": 2, "k": 1, "d": 1, "v": [[[[1]]]]}"#).unwrap();
        assert!(bad.build::<f64>().is_err());
    }
}
