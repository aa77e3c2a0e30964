//! JSON encodings. Big integers are decimal strings, rationals are
//! `["num", "den"]`, polynomials are `{"coeffs": [...]}` low to high, and
//! every report carries a `"kind"` discriminator. Field order is fixed by
//! construction.

use serde_json::{json, Map, Value};

use crate::appendix_comb::{ConclusionTag, MultisetSystem};
use crate::decompose::Decomposition;
use crate::error::Error;
use crate::forms::{FormReport, GammaOrder, RamProfile};
use crate::iterates::{BoundReport, FactorClauses, IterateSplit, PreciseReport, PreciseSplitReport};
use crate::poly::{Linear, Poly, Rational};
use crate::ritt::{Ritt2Classification, RittKind};

pub trait ToJson {
    fn to_json(&self) -> Value;
}

impl ToJson for Rational {
    fn to_json(&self) -> Value {
        json!([self.numer().to_string(), self.denom().to_string()])
    }
}

impl ToJson for Poly {
    fn to_json(&self) -> Value {
        let coeffs: Vec<Value> = if self.is_zero() {
            vec![Rational::default().to_json()]
        } else {
            self.coeffs().iter().map(ToJson::to_json).collect()
        };
        json!({ "coeffs": coeffs })
    }
}

impl ToJson for Linear {
    fn to_json(&self) -> Value {
        json!({ "scale": self.scale().to_json(), "shift": self.shift().to_json() })
    }
}

impl ToJson for Decomposition {
    fn to_json(&self) -> Value {
        let factors: Vec<Value> = self.factors.iter().map(ToJson::to_json).collect();
        json!({ "leading": self.leading.to_json(), "factors": factors })
    }
}

impl<T: ToJson> ToJson for [T] {
    fn to_json(&self) -> Value {
        Value::Array(self.iter().map(ToJson::to_json).collect())
    }
}

impl<T: ToJson> ToJson for Vec<T> {
    fn to_json(&self) -> Value {
        self.as_slice().to_json()
    }
}

impl<T: ToJson> ToJson for Option<T> {
    fn to_json(&self) -> Value {
        self.as_ref().map_or(Value::Null, ToJson::to_json)
    }
}

/// Builds an object whose first field is `"kind"`.
fn kinded(kind: &str, fields: Vec<(&str, Value)>) -> Value {
    let mut map = Map::new();
    map.insert("kind".into(), Value::String(kind.into()));
    for (k, v) in fields {
        map.insert(k.into(), v);
    }
    Value::Object(map)
}

impl ToJson for FormReport {
    fn to_json(&self) -> Value {
        match self {
            FormReport::Cyclic { n, witness: w } => kinded(
                self.kind(),
                vec![
                    ("n", json!(n)),
                    ("witness", json!({ "beta": w.beta.to_json(), "c": w.c.to_json(), "v": w.v.to_json() })),
                ],
            ),
            FormReport::Dihedral { n, witness: w } => kinded(
                self.kind(),
                vec![
                    ("n", json!(n)),
                    (
                        "witness",
                        json!({
                            "beta": w.beta.to_json(),
                            "alpha_sq": w.alpha_sq.to_json(),
                            "p_alpha": w.p_alpha.to_json(),
                            "q": w.q.to_json(),
                        }),
                    ),
                ],
            ),
            FormReport::TwistInner { s, n, witness: w } => kinded(
                self.kind(),
                vec![
                    ("s", json!(s)),
                    ("n", json!(n)),
                    (
                        "witness",
                        json!({ "outer": w.outer.to_json(), "inner": w.inner.to_json(), "h": w.h.to_json() }),
                    ),
                ],
            ),
            FormReport::TwistOuter { s, n, witness: w } => kinded(
                self.kind(),
                vec![
                    ("s", json!(s)),
                    ("n", json!(n)),
                    (
                        "witness",
                        json!({
                            "c0": w.c0.to_json(),
                            "beta": w.beta.to_json(),
                            "scale": w.scale.to_json(),
                            "h": w.h.to_json(),
                        }),
                    ),
                ],
            ),
            FormReport::None => kinded(self.kind(), vec![]),
        }
    }
}

impl ToJson for GammaOrder {
    fn to_json(&self) -> Value {
        match self {
            GammaOrder::Finite(n) => json!(n),
            GammaOrder::Infinite => json!("infinite"),
        }
    }
}

impl ToJson for RamProfile {
    fn to_json(&self) -> Value {
        let data: Vec<Value> = self
            .rational_branch_data
            .iter()
            .map(|(t, pat)| json!({ "point": t.to_json(), "multiplicities": pat }))
            .collect();
        kinded(
            "ram_profile",
            vec![
                ("branch_count", json!(self.branch_count)),
                ("all_simple_ramification", json!(self.all_simple_ramification)),
                ("rational_branch_data", Value::Array(data)),
            ],
        )
    }
}

impl ToJson for Ritt2Classification {
    fn to_json(&self) -> Value {
        let mut fields = match &self.kind {
            RittKind::TrivialLinear { ell } => vec![("ell", ell.to_json())],
            RittKind::ChebyshevType { n, m, linears } => vec![
                ("n", json!(n)),
                ("m", json!(m)),
                ("linears", linears.as_slice().to_json()),
            ],
            RittKind::ExponentialType { n, s, h, linears } => vec![
                ("n", json!(n)),
                ("s", json!(s)),
                ("h", h.to_json()),
                ("linears", linears.as_slice().to_json()),
            ],
        };
        fields.push(("swapped", json!(self.swapped)));
        fields.push(("outer", self.outer.to_json()));
        fields.push(("inner", self.inner.to_json()));
        kinded(self.kind_name(), fields)
    }
}

impl ToJson for IterateSplit {
    fn to_json(&self) -> Value {
        json!({
            "a": self.a.to_json(),
            "b": self.b.to_json(),
            "i": self.i,
            "j": self.j,
            "k": self.k,
            "a_hat": self.a_hat.to_json(),
            "b_hat": self.b_hat.to_json(),
        })
    }
}

impl ToJson for BoundReport {
    fn to_json(&self) -> Value {
        let extremal = self
            .extremal
            .as_ref()
            .map_or(Value::Null, |(e, s)| json!({ "e": e, "split": s.to_json() }));
        kinded(
            "iterate_bound",
            vec![
                ("n", json!(self.n)),
                ("splits_checked", json!(self.splits_checked)),
                ("max_k", json!(self.max_k)),
                ("extremal", extremal),
                ("log_bound_holds", json!(self.log_bound_holds)),
                ("refined_bound_holds", json!(self.refined_bound_holds)),
                ("holds", json!(self.holds())),
            ],
        )
    }
}

impl ToJson for FactorClauses {
    fn to_json(&self) -> Value {
        json!({
            "index": self.index,
            "degree": self.degree,
            "class": self.class,
            "in_z": self.in_z,
            "quadrant_product": self.quadrant_product,
            "clause1": self.clause1,
            "clause1_quadrant": self.clause1_quadrant,
            "clause2": self.clause2,
            "clause2_tight": self.clause2_tight,
            "clause3": self.clause3,
        })
    }
}

impl ToJson for PreciseSplitReport {
    fn to_json(&self) -> Value {
        json!({
            "e": self.e,
            "a": self.a.to_json(),
            "b": self.b.to_json(),
            "factors": self.factors.to_json(),
            "clause4": self.clause4,
        })
    }
}

impl ToJson for PreciseReport {
    fn to_json(&self) -> Value {
        kinded(
            "precise_iterates",
            vec![
                ("n", json!(self.n)),
                ("decomposition", self.decomposition.to_json()),
                ("splits", self.splits.to_json()),
                ("clause1_reading", json!(self.clause1_reading)),
                ("power_conjugator", self.power_conjugator.to_json()),
                ("chebyshev_sign", json!(self.chebyshev_sign)),
                ("violations", json!(self.violations())),
                ("holds", json!(self.holds())),
            ],
        )
    }
}

impl ToJson for MultisetSystem {
    fn to_json(&self) -> Value {
        let pairs: Vec<Value> = self.pairs.iter().map(|(a, b)| json!({ "A": a, "B": b })).collect();
        json!({ "m": self.m, "n": self.n, "pairs": pairs })
    }
}

impl ToJson for ConclusionTag {
    fn to_json(&self) -> Value {
        json!({ "tag": self.tag.name(), "witness_index": self.witness_index })
    }
}

impl ToJson for Error {
    fn to_json(&self) -> Value {
        let mut inner = Map::new();
        inner.insert("kind".into(), json!(self.kind()));
        inner.insert("message".into(), json!(self.to_string()));
        if let Error::Parse { pos, .. } = self {
            inner.insert("position".into(), json!(pos));
        }
        json!({ "error": Value::Object(inner) })
    }
}

/// Compact one-line rendering.
pub fn format_json<T: ToJson + ?Sized>(value: &T) -> String {
    value.to_json().to_string()
}
