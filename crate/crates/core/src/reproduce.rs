//! The five worked examples, measured and compared against golden values.

use std::sync::Arc;

use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::boolfun::{cubic_symmetric_sum, BooleanFunction, Domain};
use crate::constructions::{
    gold_lambda_valid, gold_triple, kasami_triple, lemma2_is_permutation, mm_niho_power, niho_bent, niho_dual,
    niho_params, niho_triple, thm8_exponent, ConstructionReport,
};
use crate::error::{Error, Result};
use crate::gf2n::{Elem, Field};
use crate::walsh::fwht;

pub const EXAMPLE_IDS: std::ops::RangeInclusive<u8> = 1..=5;

const GOLDEN: [&str; 5] = [
    include_str!("../golden/example1.json"),
    include_str!("../golden/example2.json"),
    include_str!("../golden/example3.json"),
    include_str!("../golden/example4.json"),
    include_str!("../golden/example5.json"),
];

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub expected: Value,
    pub measured: Value,
    pub ok: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExampleOutcome {
    pub example: u8,
    pub passed: bool,
    pub checks: Vec<Check>,
    /// Everything measured, including values with no golden counterpart.
    pub measured: Map<String, Value>,
    pub reports: Vec<ConstructionReport>,
}

impl ExampleOutcome {
    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.ok)
    }
}

pub fn golden(id: u8) -> Result<Map<String, Value>> {
    if !EXAMPLE_IDS.contains(&id) {
        return Err(Error::Config(format!("example id must be 1..=5, got {id}")));
    }
    match serde_json::from_str(GOLDEN[id as usize - 1]) {
        Ok(Value::Object(m)) => Ok(m),
        _ => Err(Error::Config(format!("golden file for example {id} is malformed"))),
    }
}

fn field(n: u32, poly: u32) -> Result<Arc<Field>> {
    Ok(Arc::new(Field::new(n, poly)?))
}

struct Sheet {
    values: Map<String, Value>,
    reports: Vec<ConstructionReport>,
}

impl Sheet {
    fn new(f: &Field) -> Self {
        let mut values = Map::new();
        values.insert("field".into(), json!(f.config()));
        Sheet {
            values,
            reports: Vec::new(),
        }
    }

    fn put(&mut self, key: &str, v: impl Serialize) {
        self.values
            .insert(key.into(), serde_json::to_value(v).expect("serializable"));
    }

    /// Records the report under `prefix` and keeps it.
    fn report(&mut self, prefix: &str, r: ConstructionReport) {
        let key = |s: &str| {
            if prefix.is_empty() {
                s.to_string()
            } else {
                format!("{prefix}_{s}")
            }
        };
        self.put(&key("conditions"), &r.conditions);
        self.put(&key("class"), r.measured.class);
        self.put(&key("distribution"), &r.measured.distribution);
        self.put(&key("degree"), r.degree);
        self.put(&key("match"), r.matches);
        for (k, v) in &r.diagnostics {
            self.values.insert(key(k), v.clone());
        }
        self.reports.push(r);
    }
}

fn example1() -> Result<Sheet> {
    let f = field(6, 0x5b)?;
    let mut s = Sheet::new(&f);
    let (u, v, r) = (f.gen_pow(1), f.gen_pow(9), f.gen_pow(27));
    s.put(
        "symmetric_sum_012",
        f.format_elem(cubic_symmetric_sum(&f, u, v, r, 0, 1, 2)?),
    );
    s.report("", kasami_triple(&f, Elem::ONE, u, v, r)?.report()?);
    Ok(s)
}

fn example2() -> Result<Sheet> {
    let f = field(8, 0x11d)?;
    let mut s = Sheet::new(&f);
    let r = kasami_triple(&f, f.gen_pow(17), f.gen_pow(10), f.gen_pow(9), f.gen_pow(3))?.report()?;
    s.report("", r);
    Ok(s)
}

fn example3() -> Result<Sheet> {
    let f = field(8, 0x11d)?;
    let mut s = Sheet::new(&f);
    let (lam, u, v) = (f.gen_pow(34), f.gen_pow(212), f.gen_pow(10));
    s.put("lambda_valid", gold_lambda_valid(&f, lam)?);
    s.put("linear_map_permutation", lemma2_is_permutation(&f, lam)?);
    let r1 = f.gen_pow(16);
    s.put(
        "case1_symmetric_sum_012",
        f.format_elem(cubic_symmetric_sum(&f, u, v, r1, 0, 1, 2)?),
    );
    s.report("case1", gold_triple(&f, lam, u, v, r1)?.report()?);
    s.report("case2", gold_triple(&f, lam, u, v, f.gen_pow(12))?.report()?);
    Ok(s)
}

fn example4() -> Result<Sheet> {
    let f = field(8, 0x11d)?;
    let mut s = Sheet::new(&f);
    let p = niho_params(&f, 3)?;
    s.put("exponents", &p.exponents);
    s.put("alpha", f.format_elem(p.alpha));
    s.put("dual_exponent", p.dual_exponent);
    let g = niho_bent(&f, &p)?;
    let spec = fwht(&g)?;
    s.put("base_class", spec.classify().tag);
    let mut dual_ok = true;
    for a in f.elements() {
        let expected = if niho_dual(&f, &p, a)? { -16 } else { 16 };
        dual_ok &= spec.at(a.index()) == expected;
    }
    s.put("dual_matches", dual_ok);

    let (u, v, r) = (f.gen_pow(34), f.gen_pow(17), f.gen_pow(51));
    s.put("u_plus_v_plus_r", f.format_elem(u + v + r));
    s.report("product", niho_triple(&f, 3, u, v, r)?.report()?);

    // the form as printed: linear terms added rather than multiplied
    let mut sum = g;
    for c in [u, v, r] {
        sum = sum.xor(&BooleanFunction::from_trace_monomial(f.clone(), 8, c, 1)?)?;
    }
    let sum_spec = fwht(&sum)?;
    s.put("sum_class", sum_spec.classify().tag);
    s.put("sum_degree", sum.algebraic_degree());
    Ok(s)
}

fn example5() -> Result<Sheet> {
    let f = field(9, 0x211)?;
    let mut s = Sheet::new(&f);
    s.put("d", thm8_exponent(9, 3)?);
    let d = Domain::Bivariate(f.clone());
    let g = |k: u64| f.gen_pow(k);
    let cases = [
        ("case1", (g(219), g(73)), (g(146), Elem::ONE)),
        ("case2", (g(146), g(73)), (g(73), Elem::ONE)),
    ];
    for (name, (u1, u2), (v1, v2)) in cases {
        let r = mm_niho_power(&f, 3, d.pack(u1, u2), d.pack(v1, v2))?.report()?;
        s.put(&format!("{name}_condition"), r.conditions[0]);
        s.report(name, r);
    }
    Ok(s)
}

/// Builds example `id`, measures it, and diffs against the golden values.
pub fn reproduce(id: u8) -> Result<ExampleOutcome> {
    let expected = golden(id)?;
    let sheet = match id {
        1 => example1(),
        2 => example2(),
        3 => example3(),
        4 => example4(),
        _ => example5(),
    }?;
    let checks: Vec<Check> = expected
        .into_iter()
        .map(|(name, expected)| {
            let measured = sheet.values.get(&name).cloned().unwrap_or(Value::Null);
            Check {
                ok: measured == expected,
                name,
                expected,
                measured,
            }
        })
        .collect();
    Ok(ExampleOutcome {
        example: id,
        passed: checks.iter().all(|c| c.ok),
        checks,
        measured: sheet.values,
        reports: sheet.reports,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn out_of_range() {
        assert!(matches!(reproduce(0), Err(Error::Config(_))));
        assert!(matches!(reproduce(9), Err(Error::Config(_))));
    }

    #[test]
    fn golden_files_parse() {
        for id in EXAMPLE_IDS {
            assert!(golden(id).unwrap().contains_key("field"));
        }
    }

    #[test]
    fn small_examples_pass() {
        for id in 1..=4 {
            let o = reproduce(id).unwrap();
            let bad: Vec<_> = o.failures().collect();
            assert!(o.passed, "example {id}: {bad:?}");
        }
    }
}
