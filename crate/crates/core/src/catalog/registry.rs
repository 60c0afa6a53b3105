use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::catalog::eval::{self, EvalFn};
use crate::catalog::params::{Exclusion, Index, Offset, Schema};
use crate::error::{Error, Result};

/// How a check decides pass or fail.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckKind {
    /// Both sides numeric, compared with [`crate::numerics::near_equal`].
    NumericComplex,
    /// Numeric left side against an exact rational right side.
    ExactInteger,
    /// Both sides are residues, compared exactly.
    Congruence,
    /// A stated sign or inequality.
    SignCondition,
}

impl fmt::Display for CheckKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CheckKind::NumericComplex => "numeric-complex",
            CheckKind::ExactInteger => "exact-integer",
            CheckKind::Congruence => "congruence",
            CheckKind::SignCondition => "sign-condition",
        })
    }
}

/// One catalog entry.
#[derive(Clone)]
pub struct IdentityDescriptor {
    pub id: &'static str,
    pub kind: CheckKind,
    pub schema: Schema,
    /// The statement being checked, in plain notation.
    pub anchor: &'static str,
    pub(crate) eval: EvalFn,
}

impl fmt::Debug for IdentityDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("IdentityDescriptor")
            .field("id", &self.id)
            .field("kind", &self.kind)
            .field("schema", &self.schema)
            .field("anchor", &self.anchor)
            .finish()
    }
}

impl IdentityDescriptor {
    /// Human-readable excluded sets.
    pub fn excluded(&self) -> Vec<String> {
        self.schema.exclusions.iter().map(Exclusion::describe).collect()
    }
}

const Z: Offset = Offset::Rat(0, 1);
const HALF: Offset = Offset::Rat(1, 2);
const MINUS_HALF: Offset = Offset::Rat(-1, 2);

const fn n_schema(index: Index, vars: u8, exclusions: &'static [Exclusion]) -> Schema {
    Schema {
        index,
        uses_a: false,
        vars,
        exclusions,
    }
}

const fn prime(min: u64, modulus: u64, residues: &'static [u64], uses_a: bool) -> Schema {
    Schema {
        index: Index::Prime { min, modulus, residues },
        uses_a,
        vars: 0,
        exclusions: &[],
    }
}

const X_INT: &[Exclusion] = &[Exclusion::x(1, Z)];
const SINCOS_EX: &[Exclusion] = &[Exclusion::x(1, HALF), Exclusion::x(1, Offset::EpsQuarter)];
const MINUS_SINCOS_EX: &[Exclusion] = &[Exclusion::x(1, Z), Exclusion::x(1, Offset::EpsQuarter)];
const TWO_X_INT: &[Exclusion] = &[Exclusion::x(2, Z)];
const TWO_X_HALF: &[Exclusion] = &[Exclusion::x(2, MINUS_HALF)];
const SIN2D_EX: &[Exclusion] = &[Exclusion::xy(1, 1, Z), Exclusion::xy(1, -1, MINUS_HALF)];
const COS2D_EX: &[Exclusion] = &[Exclusion::xy(1, 1, MINUS_HALF), Exclusion::xy(1, -1, MINUS_HALF)];
const MIX2D_EX: &[Exclusion] = &[Exclusion::xy(1, 1, Offset::EpsQuarter), Exclusion::xy(1, -1, Offset::EpsQuarter)];
const X_HALF: &[Exclusion] = &[Exclusion::x(1, MINUS_HALF)];

const ANY: &[u64] = &[0];
const ONE_MOD_4: &[u64] = &[1];
const THREE_MOD_4: &[u64] = &[3];

fn build() -> Vec<IdentityDescriptor> {
    use CheckKind::*;
    use Index::*;
    let d = |id, kind, schema, anchor, eval| IdentityDescriptor {
        id,
        kind,
        schema,
        anchor,
        eval,
    };
    let mut v = vec![
        d("csc2", NumericComplex, n_schema(OddN, 1, X_INT),
          "(1/n^2) sum_{r=0}^{n-1} csc^2(pi(x+r)/n) = csc^2(pi x)", eval::csc2),
        d("secant", ExactInteger, n_schema(OddN, 0, &[]),
          "sum_{r=0}^{n-1} sec^2(pi r/n) = n^2", eval::secant),
        d("sin_product", NumericComplex, n_schema(OddN, 1, &[]),
          "prod_{r=0}^{n-1} 2 sin(pi(x+r)/n) = 2 sin(pi x)", eval::sin_product),
        d("cot_sum", NumericComplex, n_schema(OddN, 1, X_INT),
          "(1/n) sum_{r=0}^{n-1} cot(pi(x+r)/n) = cot(pi x)", eval::cot_sum),
        d("cot2_sum", ExactInteger, n_schema(AnyN, 0, &[]),
          "sum_{r=1}^{n-1} cot^2(pi r/n) = (n-1)(n-2)/3", eval::cot2_sum),
        d("cot4_sum", ExactInteger, n_schema(AnyN, 0, &[]),
          "sum_{r=1}^{n-1} cot^4(pi r/n) = (n-1)(n-2)(n^2+3n-13)/45", eval::cot4_sum),
        d("sincos", NumericComplex,
          n_schema(OddN, 1, SINCOS_EX),
          "sum_{r=0}^{n-1} 1/(1 + sin t_r + cos t_r) = e n/(1 + e sin 2pi x + cos 2pi x), t_r = 2pi(x+r)/n, e = (-1/n)",
          eval::sincos),
        d("minus_sincos", NumericComplex,
          n_schema(OddN, 1, MINUS_SINCOS_EX),
          "sum_{r=0}^{n-1} 1/(1 + sin t_r - cos t_r) = e n/(1 + e sin 2pi x - cos 2pi x), t_r = 2pi(x+r)/n, e = (-1/n)",
          eval::minus_sincos),
        d("csc", NumericComplex, n_schema(OddN, 1, TWO_X_INT),
          "(1/n) sum_{r=0}^{n-1} csc(2pi(x+r)/n) = csc(2pi x)", eval::csc),
        d("sec", NumericComplex, n_schema(OddN, 1, TWO_X_HALF),
          "(1/n) sum_{r=0}^{n-1} sec(2pi(x+r)/n) = (-1/n) sec(2pi x)", eval::sec),
        d("sincos0", ExactInteger, n_schema(OddN, 0, &[]),
          "sum_{r=0}^{n-1} 1/(1 + sin(2pi r/n) + cos(2pi r/n)) = (-1/n) n/2", eval::sincos0),
        d("minus_sincos0", ExactInteger, n_schema(OddN, 0, &[]),
          "sum_{r=0}^{n-1} 1/(1 + sin(pi(2r+1)/n) - cos(pi(2r+1)/n)) = (-1/n) n/2", eval::minus_sincos0),
        d("sec0a", ExactInteger, n_schema(OddN, 0, &[]),
          "sum_{r=0}^{n-1} sec(2pi r/n) = (-1/n) n", eval::sec0a),
        d("sec0b", ExactInteger, n_schema(OddN, 0, &[]),
          "sum_{r=0}^{n-1} sec(pi(2r+1)/n) = -(-1/n) n", eval::sec0b),
        d("sin2d", NumericComplex,
          n_schema(OddN, 2, SIN2D_EX),
          "sum_{j,k=0}^{n-1} 1/(sin(2pi(x+j)/n) + sin(2pi(y+k)/n)) = (-1/n) n^2/(sin 2pi x + sin 2pi y)",
          eval::sin2d),
        d("cos2d", NumericComplex,
          n_schema(OddN, 2, COS2D_EX),
          "sum_{j,k=0}^{n-1} 1/(cos(2pi(x+j)/n) + cos(2pi(y+k)/n)) = n^2/(cos 2pi x + cos 2pi y)",
          eval::cos2d),
        d("mix2d", NumericComplex,
          n_schema(OddN, 2, MIX2D_EX),
          "sum_{j,k=0}^{n-1} 1/(sin(2pi(x+j)/n) + cos(2pi(y+k)/n)) = n^2/((-1/n) sin 2pi x + cos 2pi y)",
          eval::mix2d),
        d("mix0", ExactInteger, n_schema(OddN, 0, &[]),
          "sum_{j,k=0}^{n-1} 1/(sin(2pi j/n) + cos(2pi k/n)) = n^2", eval::mix0),
        d("mix1", ExactInteger, n_schema(OddN, 0, &[]),
          "sum_{j,k=0}^{n-1} 1/(sin(pi(2j+1)/n) + cos(pi(2k+1)/n)) = -n^2", eval::mix1),
        d("cos0", ExactInteger, n_schema(OddN, 0, &[]),
          "sum_{j,k=0}^{n-1} 1/(cos(2pi j/n) + cos(2pi k/n)) = n^2/2", eval::cos0),
        d("cos1", ExactInteger, n_schema(OddN, 0, &[]),
          "sum_{j,k=0}^{n-1} 1/(cos(pi(2j+1)/n) + cos(pi(2k+1)/n)) = -n^2/2", eval::cos1),
        d("cosp", ExactInteger, prime(3, 4, THREE_MOD_4, false),
          "sum_{1<=j<k<=(p-1)/2} 1/(cos(2pi j^2/p) + cos(2pi k^2/p)) = -((p+1)/4)((p-3)/4)", eval::cosp),
        d("cot_prod", NumericComplex, n_schema(OddN, 1, X_INT),
          "prod_{r=0}^{n-1} (1 + cot(pi(x+r)/n)) = (2/n) 2^((n-1)/2) (1 + (-1/n) cot(pi x))", eval::cot_prod),
        d("tan_prod", NumericComplex, n_schema(OddN, 1, X_HALF),
          "prod_{r=0}^{n-1} (1 + tan(pi(x+r)/n)) = (2/n) 2^((n-1)/2) (1 + (-1/n) tan(pi x))", eval::tan_prod),
        d("tancot", NumericComplex, prime(5, 1, ANY, true),
          "sum_k 1/(cot(pi a k^2/p) - 1) = sum_k 1/(1 - tan(pi a k^2/p)) - (p-1)/2 = (p/4)((-1/p)-1) + (-2a/p)(sqrt p/2) sum_k (-1)^k (k/p), k = 1..(p-1)/2",
          eval::tancot),
        d("h_minus_p", ExactInteger, prime(5, 4, ONE_MOD_4, false),
          "(2/sqrt p) sum_{k=1}^{(p-1)/2} 1/(cot(pi k^2/p) - 1) = h(-p)", eval::h_minus_p),
        d("wc", Congruence, prime(5, 4, ONE_MOD_4, false),
          "(-1)^#{1<=k<p/4 : (k/p)=-1} 2^((p-1)/4) = 1 if p = 1 (mod 8), ((p-1)/2)! if p = 5 (mod 8), mod p",
          eval::wc),
        d("p14", NumericComplex, prime(5, 4, ONE_MOD_4, true),
          "prod_{k=1}^{(p-1)/2} (1 - e^{2pi i a k^2/p}) = sqrt p eps_p^{-(a/p) h(p)}", eval::p14),
        d("cos14", NumericComplex, prime(5, 4, ONE_MOD_4, true),
          "2^((p-1)/2) prod_{k=1}^{(p-1)/2} cos(pi a k^2/p) = (-1)^(a(p-1)/4) eps_p^{(1-(2/p))(a/p) h(p)}",
          eval::cos14),
        d("re", Congruence, prime(5, 4, ONE_MOD_4, false),
          "2 a_p = -2 ((p-1)/2)! (mod p), where eps_p^h(p) = a_p + b_p sqrt p", eval::re),
        d("prod_4k3", NumericComplex, prime(7, 4, THREE_MOD_4, true),
          "prod_{k=1}^{(p-1)/2} (1 - e^{2pi i a k^2/p}) = (-1)^((h(-p)+1)/2) (a/p) sqrt p i", eval::prod_4k3),
        d("root1", NumericComplex, prime(17, 8, &[1], true),
          "S_p^a(i) = (-1)^((p-1)/8 + #{1<=k<p/4 : (k/p)=1})", eval::root1),
        d("root5", NumericComplex, prime(5, 8, &[5], true),
          "S_p^a(i) = i (-1)^((p-5)/8 + #{1<=k<p/4 : (k/p)=1}) (a/p) eps_p^{-(a/p) h(p)}", eval::root5),
        d("S_i", NumericComplex, prime(7, 4, THREE_MOD_4, false),
          "(i - (-1)^((p+1)/4)) S_p(i) = (-1)^(((h(-p)+1)/2)((p+1)/4)) (s_p - t_p sqrt p)", eval::s_i),
        d("st", ExactInteger, prime(7, 4, THREE_MOD_4, false),
          "S_p(i) S_p(-i) = (2/p), with a_p^2 - p b_p^2 = 1 and (s_p^2 - p t_p^2)/2 = (2/p)", eval::st),
        d("tan1", NumericComplex, prime(17, 8, &[1], true),
          "prod_{k=1}^{(p-1)/2} (1 + tan(pi a k^2/p)) = (-1)^#{1<=k<p/4 : (k/p)=1} 2^((p-1)/4)", eval::tan1),
        d("cot1", NumericComplex, prime(17, 8, &[1], true),
          "prod_{k=1}^{(p-1)/2} (1 + cot(pi a k^2/p)) = (-1)^#{1<=k<p/4 : (k/p)=1} 2^((p-1)/4) eps_p^{(a/p) h(p)}/sqrt p",
          eval::cot1),
        d("tan5", NumericComplex, prime(5, 8, &[5], true),
          "prod_{k=1}^{(p-1)/2} (1 + tan(pi a k^2/p)) = (-1)^#{1<=k<p/4 : (k/p)=-1} 2^((p-1)/4) (a/p) eps_p^{-3(a/p) h(p)}",
          eval::tan5),
        d("cot5", NumericComplex, prime(5, 8, &[5], true),
          "prod_{k=1}^{(p-1)/2} (1 + cot(pi a k^2/p)) = (-1)^#{1<=k<p/4 : (k/p)=1} (a/p) 2^((p-1)/4)/sqrt p",
          eval::cot5),
        d("tan43", NumericComplex, prime(3, 4, THREE_MOD_4, true),
          "prod_{k=1}^{(p-1)/2} (1 + tan(pi a k^2/p)) = (-1)^([p=3] + floor((p+1)/8) + ((h(-p)+1)/2)((p+1)/4)) 2^((p-3)/4) (s_p + (a/p) t_p sqrt p)",
          eval::tan43),
        d("cot43", NumericComplex, prime(3, 4, THREE_MOD_4, true),
          "prod_{k=1}^{(p-1)/2} (1 + cot(pi a k^2/p)) = (-1)^(floor((p-3)/8) + ((h(-p)-1)/2)((p-3)/4)) 2^((p-3)/4) (t_p + (a/p) s_p/sqrt p)",
          eval::cot43),
        d("lerch", Congruence, prime(5, 4, ONE_MOD_4, false),
          "(-1)^#{1<=k<p/3 : (k/p)=-1} (-3)^((p-1)/4) = 1 if p = 1 (mod 12), ((p-1)/2)! if p = 5 (mod 12), mod p; and h(-3p) = 2 sum_{k<p/3} (k/p)",
          eval::lerch),
        d("relation", NumericComplex, prime(5, 1, ANY, false),
          "S_p(-w) = (-1/p) conj(S_p(w))/S_p(w) if p = 1,3 (mod 8), else (3/p) w^((p/3)-1)/|S_p(w)|^2, w = e^{2pi i/3}",
          eval::relation),
        d("omega", NumericComplex, prime(5, 4, ONE_MOD_4, false),
          "(-1)^#{1<=k<=(p+1)/3 : (k/p)=-1} S_p(w) = 1 if p = 1 (mod 12), w eps_p^h(p) if p = 5 (mod 12)",
          eval::omega_id),
        d("minus_omega41", NumericComplex, prime(5, 4, ONE_MOD_4, false),
          "S_p(-w) = 1 if p = 1 (mod 12), -w eps_p^{-2h(p)} if p = 5 (mod 24), w if p = 17 (mod 24)",
          eval::minus_omega41),
        d("oomega", NumericComplex, prime(5, 4, ONE_MOD_4, false),
          "S_p(w) conj(S_p(w)) = eps_p^{(1-(p/3)) h(p)}", eval::oomega),
        d("zeta6_relation", NumericComplex, prime(5, 1, ANY, false),
          "S_p(e^{2pi i/6}) = conj(S_p(-w)) if p = 1 (mod 4), 1/conj(S_p(-w)) if p = 7 (mod 12), w/conj(S_p(-w)) if p = 11 (mod 12)",
          eval::zeta6_relation),
    ];
    v.sort_by_key(|d| d.id);
    v
}

fn catalog() -> &'static [IdentityDescriptor] {
    static CATALOG: OnceLock<Vec<IdentityDescriptor>> = OnceLock::new();
    CATALOG.get_or_init(build)
}

/// Every identity, sorted by id.
pub fn list_identities() -> &'static [IdentityDescriptor] {
    catalog()
}

pub fn identity_ids() -> Vec<&'static str> {
    catalog().iter().map(|d| d.id).collect()
}

pub fn lookup(id: &str) -> Result<&'static IdentityDescriptor> {
    catalog()
        .binary_search_by(|d| d.id.cmp(id))
        .map(|i| &catalog()[i])
        .map_err(|_| Error::UnknownIdentity {
            id: id.to_string(),
            valid: identity_ids().join(", "),
        })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_shape() {
        let ids = identity_ids();
        assert!(ids.contains(&"secant"));
        assert!(ids.windows(2).all(|w| w[0] < w[1]), "ids sorted and unique");
        assert!(list_identities().iter().all(|d| !d.anchor.is_empty()));
        assert!(lookup("no-such-id").is_err());
        assert_eq!(lookup("tan43").unwrap().id, "tan43");
    }
}
