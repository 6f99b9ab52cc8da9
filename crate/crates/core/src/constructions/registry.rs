use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use super::{
    gold_double, gold_triple, gold_valid_lambdas, kasami_double, kasami_triple, mm_linearized_double,
    mm_linearized_triple, mm_niho_power, niho_triple, Construction,
};
use crate::boolfun::Domain;
use crate::error::{Error, Result};
use crate::gf2n::{Elem, Field};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ConstructionKind {
    KasamiTriple,
    KasamiDouble,
    GoldTriple,
    GoldDouble,
    NihoTriple,
    MmLinearizedTriple,
    MmLinearizedDouble,
    MmNihoPower,
}

impl ConstructionKind {
    pub const ALL: [ConstructionKind; 8] = [
        ConstructionKind::KasamiTriple,
        ConstructionKind::KasamiDouble,
        ConstructionKind::GoldTriple,
        ConstructionKind::GoldDouble,
        ConstructionKind::NihoTriple,
        ConstructionKind::MmLinearizedTriple,
        ConstructionKind::MmLinearizedDouble,
        ConstructionKind::MmNihoPower,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ConstructionKind::KasamiTriple => "kasami-triple",
            ConstructionKind::KasamiDouble => "kasami-double",
            ConstructionKind::GoldTriple => "gold-triple",
            ConstructionKind::GoldDouble => "gold-double",
            ConstructionKind::NihoTriple => "niho-triple",
            ConstructionKind::MmLinearizedTriple => "mm-linearized-triple",
            ConstructionKind::MmLinearizedDouble => "mm-linearized-double",
            ConstructionKind::MmNihoPower => "mm-niho-power",
        }
    }

    /// Functions on GF(2^m) x GF(2^m) rather than on the field itself.
    pub fn is_bivariate(self) -> bool {
        matches!(
            self,
            ConstructionKind::MmLinearizedTriple | ConstructionKind::MmLinearizedDouble | ConstructionKind::MmNihoPower
        )
    }

    /// Three linear factors rather than two.
    pub fn is_triple(self) -> bool {
        matches!(
            self,
            ConstructionKind::KasamiTriple
                | ConstructionKind::GoldTriple
                | ConstructionKind::NihoTriple
                | ConstructionKind::MmLinearizedTriple
        )
    }

    pub fn domain(self, field: &Arc<Field>) -> Domain {
        if self.is_bivariate() {
            Domain::Bivariate(field.clone())
        } else {
            Domain::Univariate(field.clone())
        }
    }
}

impl fmt::Display for ConstructionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ConstructionKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::Config(format!("unknown construction {s:?}")))
    }
}

/// Parameters as supplied by a caller; which ones matter depends on the kind.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Inputs {
    pub lambda: Option<Elem>,
    pub u: Option<Elem>,
    pub v: Option<Elem>,
    pub r: Option<Elem>,
    pub u1: Option<Elem>,
    pub u2: Option<Elem>,
    pub v1: Option<Elem>,
    pub v2: Option<Elem>,
    pub r1: Option<Elem>,
    pub r2: Option<Elem>,
    pub k: Option<u32>,
    pub s: Option<u32>,
}

fn need<T>(x: Option<T>, name: &str) -> Result<T> {
    x.ok_or_else(|| Error::InvalidParams(format!("missing parameter {name}")))
}

fn pair(field: &Field, a: Option<Elem>, b: Option<Elem>, name: &str) -> Result<usize> {
    let a = need(a, &format!("{name}1"))?;
    let b = need(b, &format!("{name}2"))?;
    Ok(a.index() | (b.index() << field.n()))
}

/// `lambda` used when none is given.
pub fn default_lambda(kind: ConstructionKind, field: &Field) -> Result<Option<Elem>> {
    Ok(match kind {
        ConstructionKind::KasamiTriple | ConstructionKind::KasamiDouble => Some(Elem::ONE),
        ConstructionKind::GoldTriple | ConstructionKind::GoldDouble => {
            Some(*gold_valid_lambdas(field)?.first().ok_or(Error::InvalidLambda)?)
        }
        _ => None,
    })
}

/// Builds the named construction from explicit parameters.
pub fn build(kind: ConstructionKind, field: &Arc<Field>, p: &Inputs) -> Result<Construction> {
    let lambda = || -> Result<Elem> {
        match p.lambda {
            Some(l) => Ok(l),
            None => need(default_lambda(kind, field)?, "lambda"),
        }
    };
    match kind {
        ConstructionKind::KasamiTriple => {
            kasami_triple(field, lambda()?, need(p.u, "u")?, need(p.v, "v")?, need(p.r, "r")?)
        }
        ConstructionKind::KasamiDouble => kasami_double(field, lambda()?, need(p.u, "u")?, need(p.v, "v")?),
        ConstructionKind::GoldTriple => {
            check_gold_k(field, p.k)?;
            gold_triple(field, lambda()?, need(p.u, "u")?, need(p.v, "v")?, need(p.r, "r")?)
        }
        ConstructionKind::GoldDouble => {
            check_gold_k(field, p.k)?;
            gold_double(field, lambda()?, need(p.u, "u")?, need(p.v, "v")?)
        }
        ConstructionKind::NihoTriple => niho_triple(
            field,
            need(p.k, "k")?,
            need(p.u, "u")?,
            need(p.v, "v")?,
            need(p.r, "r")?,
        ),
        ConstructionKind::MmLinearizedTriple => mm_linearized_triple(
            field,
            p.k.unwrap_or(0),
            pair(field, p.u1, p.u2, "u")?,
            pair(field, p.v1, p.v2, "v")?,
            pair(field, p.r1, p.r2, "r")?,
        ),
        ConstructionKind::MmLinearizedDouble => mm_linearized_double(
            field,
            p.k.unwrap_or(0),
            pair(field, p.u1, p.u2, "u")?,
            pair(field, p.v1, p.v2, "v")?,
        ),
        ConstructionKind::MmNihoPower => mm_niho_power(
            field,
            need(p.s, "s")?,
            pair(field, p.u1, p.u2, "u")?,
            pair(field, p.v1, p.v2, "v")?,
        ),
    }
}

fn check_gold_k(field: &Field, k: Option<u32>) -> Result<()> {
    let actual = super::gold_k(field)?;
    match k {
        Some(k) if k != actual => Err(Error::BadFieldDegree(format!(
            "k = {k} does not match n = {}",
            field.n()
        ))),
        _ => Ok(()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for k in ConstructionKind::ALL {
            assert_eq!(k.name().parse::<ConstructionKind>().unwrap(), k);
        }
        assert!("bent".parse::<ConstructionKind>().is_err());
    }

    #[test]
    fn missing_parameters() {
        let f = Arc::new(Field::standard(6).unwrap());
        let p = Inputs {
            u: Some(Elem(1)),
            ..Default::default()
        };
        assert!(matches!(
            build(ConstructionKind::KasamiTriple, &f, &p),
            Err(Error::InvalidParams(_))
        ));
    }

    #[test]
    fn gold_k_mismatch() {
        let f = Arc::new(Field::standard(8).unwrap());
        let p = Inputs {
            u: Some(Elem(1)),
            v: Some(Elem(2)),
            k: Some(3),
            ..Default::default()
        };
        assert!(matches!(
            build(ConstructionKind::GoldDouble, &f, &p),
            Err(Error::BadFieldDegree(_))
        ));
    }
}
