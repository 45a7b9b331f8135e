//! Character tables with exact cyclotomic values, and the class algebra derived from them.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Deserialize;
use serde_json::Value;

use crate::classalg::ClassPartition;
use crate::cyclotomic::Cyclotomic;
use crate::{Error, Result};

#[derive(Clone, Debug)]
pub struct TableClass {
    pub name: String,
    pub size: u64,
    pub order: u64,
    pub inverse: usize,
    pub power_map: BTreeMap<u64, usize>,
}

#[derive(Clone, Debug)]
pub struct CharacterTable {
    pub name: String,
    pub order: u128,
    pub conductor: u64,
    pub classes: Vec<TableClass>,
    pub irreducibles: Vec<Vec<Cyclotomic>>,
}

#[derive(Deserialize)]
struct RawClass {
    name: String,
    size: u64,
    order: u64,
    inverse: String,
    powermap: BTreeMap<String, String>,
}

#[derive(Deserialize)]
struct RawTable {
    name: String,
    order: u128,
    conductor: u64,
    classes: Vec<RawClass>,
    irreducibles: Vec<Vec<Value>>,
}

fn parse_rational(v: &Value) -> Result<BigRational> {
    let bad = || Error::Schema(format!("not a rational: {v}"));
    match v {
        Value::Number(n) => {
            let i = n.as_i64().ok_or_else(bad)?;
            Ok(BigRational::from_integer(BigInt::from(i)))
        }
        Value::String(s) => {
            let (num, den) = s.split_once('/').unwrap_or((s.as_str(), "1"));
            let num: BigInt = num.trim().parse().map_err(|_| bad())?;
            let den: BigInt = den.trim().parse().map_err(|_| bad())?;
            if den.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(num, den))
        }
        _ => Err(bad()),
    }
}

fn parse_value(v: &Value) -> Result<Cyclotomic> {
    match v {
        Value::Object(o) => {
            let n = o.get("zeta").and_then(Value::as_u64).ok_or_else(|| Error::Schema(format!("missing zeta in {v}")))?;
            let terms = o.get("terms").and_then(Value::as_array).ok_or_else(|| Error::Schema(format!("missing terms in {v}")))?;
            let mut parsed = Vec::with_capacity(terms.len());
            for t in terms {
                let pair = t.as_array().filter(|a| a.len() == 2).ok_or_else(|| Error::Schema(format!("bad term {t}")))?;
                let e = pair[0].as_i64().ok_or_else(|| Error::Schema(format!("bad exponent {t}")))?;
                parsed.push((e, parse_rational(&pair[1])?));
            }
            Cyclotomic::from_terms(n, parsed)
        }
        _ => Ok(Cyclotomic::from_rational(parse_rational(v)?)),
    }
}

/// Serializes a value in the table schema: an integer, `"a/b"`, or a `zeta` term list.
pub fn value_to_json(v: &Cyclotomic) -> Value {
    if let Some(q) = v.to_rational() {
        if q.is_integer() {
            if let Ok(i) = q.to_integer().to_string().parse::<i64>() {
                return Value::from(i);
            }
        }
        return Value::from(q.to_string());
    }
    let terms: Vec<Value> = v.terms().map(|(e, c)| serde_json::json!([e, c.to_string()])).collect();
    serde_json::json!({"zeta": v.conductor(), "terms": terms})
}

fn sum<I: IntoIterator<Item = Cyclotomic>>(it: I) -> Result<Cyclotomic> {
    it.into_iter().try_fold(Cyclotomic::zero(), |acc, x| acc.checked_add(&x))
}

fn int(n: u128) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl CharacterTable {
    /// Parses and validates a table document; any invariant failure is an error.
    pub fn from_json(text: &str) -> Result<CharacterTable> {
        let raw: RawTable = serde_json::from_str(text).map_err(|e| Error::Schema(e.to_string()))?;
        let index: BTreeMap<&str, usize> = raw.classes.iter().enumerate().map(|(i, c)| (c.name.as_str(), i)).collect();
        if index.len() != raw.classes.len() {
            return Err(Error::Schema("duplicate class names".into()));
        }
        let lookup = |n: &str| index.get(n).copied().ok_or_else(|| Error::Schema(format!("unknown class {n:?}")));
        let mut classes = Vec::with_capacity(raw.classes.len());
        for c in &raw.classes {
            let mut power_map = BTreeMap::new();
            for (p, img) in &c.powermap {
                let p: u64 = p.parse().map_err(|_| Error::Schema(format!("bad prime {p:?}")))?;
                power_map.insert(p, lookup(img)?);
            }
            classes.push(TableClass {
                name: c.name.clone(),
                size: c.size,
                order: c.order,
                inverse: lookup(&c.inverse)?,
                power_map,
            });
        }
        let mut irreducibles = Vec::with_capacity(raw.irreducibles.len());
        for row in &raw.irreducibles {
            if row.len() != classes.len() {
                return Err(Error::Schema(format!("row of length {} for {} classes", row.len(), classes.len())));
            }
            irreducibles.push(row.iter().map(parse_value).collect::<Result<Vec<_>>>()?);
        }
        let t = CharacterTable { name: raw.name, order: raw.order, conductor: raw.conductor, classes, irreducibles };
        t.validate()?;
        Ok(t)
    }

    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }

    pub fn class_index(&self, name: &str) -> Result<usize> {
        self.classes.iter().position(|c| c.name == name).ok_or_else(|| Error::UnknownClassName(name.to_string()))
    }

    fn check_index(&self, i: usize) -> Result<()> {
        if i < self.classes.len() {
            Ok(())
        } else {
            Err(Error::InvalidClass(i))
        }
    }

    pub fn degrees(&self) -> Vec<BigInt> {
        self.irreducibles.iter().map(|r| r[0].to_integer().unwrap_or_default()).collect()
    }

    fn validate(&self) -> Result<()> {
        let k = self.classes.len();
        if k == 0 || self.irreducibles.len() != k {
            return Err(Error::Schema(format!("{} characters for {k} classes", self.irreducibles.len())));
        }
        if self.classes[0].size != 1 || self.classes[0].order != 1 {
            return Err(Error::Schema("first class must be the identity".into()));
        }
        let total: u128 = self.classes.iter().map(|c| c.size as u128).sum();
        if total != self.order {
            return Err(Error::Schema(format!("class sizes sum to {total}, order {}", self.order)));
        }
        for c in &self.classes {
            if c.size == 0 || !self.order.is_multiple_of(c.size as u128) {
                return Err(Error::Schema(format!("size of {} does not divide the order", c.name)));
            }
            if c.order == 0 || !self.conductor.is_multiple_of(c.order) {
                return Err(Error::Schema(format!("order of {} does not divide the conductor", c.name)));
            }
            for (&p, &img) in &c.power_map {
                if self.classes[img].order != c.order / c.order.gcd(&p) {
                    return Err(Error::Schema(format!("{}-power map of {} has wrong order", p, c.name)));
                }
            }
        }
        for (i, row) in self.irreducibles.iter().enumerate() {
            let d = row[0].to_integer().filter(|d| d.is_positive());
            match d {
                Some(d) if (BigInt::from(self.order) % &d).is_zero() => {}
                _ => return Err(Error::Schema(format!("character {i} has invalid degree {}", row[0]))),
            }
            for (j, v) in row.iter().enumerate() {
                if !self.conductor.is_multiple_of(v.conductor()) {
                    return Err(Error::Schema(format!("value χ{i}({}) outside ℚ(ζ_{})", self.classes[j].name, self.conductor)));
                }
                if v.complex_conjugate() != row[self.classes[j].inverse] {
                    return Err(Error::Schema(format!("χ{i} at {} is not conjugate to its inverse class", self.classes[j].name)));
                }
            }
        }
        let deg_sq: BigInt = self.degrees().iter().map(|d| d * d).sum();
        if deg_sq != BigInt::from(self.order) {
            return Err(Error::Orthogonality(format!("sum of squared degrees is {deg_sq}, order {}", self.order)));
        }
        let conj: Vec<Vec<Cyclotomic>> =
            self.irreducibles.iter().map(|r| r.iter().map(|v| v.complex_conjugate()).collect()).collect();
        for i in 0..k {
            for j in i..k {
                let s = sum((0..k).map(|c| {
                    (&self.irreducibles[i][c] * &conj[j][c]).scale(&int(self.classes[c].size as u128))
                }))?;
                let expect = if i == j { int(self.order) } else { BigRational::zero() };
                if s.to_rational() != Some(expect) {
                    return Err(Error::Orthogonality(format!("rows {i} and {j}: inner product {s}")));
                }
            }
        }
        for a in 0..k {
            for b in a..k {
                let s = sum((0..k).map(|x| &self.irreducibles[x][a] * &conj[x][b]))?;
                let expect = if a == b { int(self.order / self.classes[a].size as u128) } else { BigRational::zero() };
                if s.to_rational() != Some(expect) {
                    return Err(Error::Orthogonality(format!(
                        "columns {} and {}: inner product {s}",
                        self.classes[a].name, self.classes[b].name
                    )));
                }
            }
        }
        Ok(())
    }

    /// `Σ_χ χ(a) χ(b) conj(χ(c)) / χ(1)`.
    fn triple_sum(&self, a: usize, b: usize, c: usize) -> Result<Cyclotomic> {
        sum(self.irreducibles.iter().map(|row| {
            let d = row[0].to_rational().expect("validated degree");
            (&(&row[a] * &row[b]) * &row[c].complex_conjugate()).scale(&d.recip())
        }))
    }

    /// For fixed `z ∈ C_k`, the number of pairs `(x, y) ∈ C_i × C_j` with `xy = z`.
    pub fn class_mult_coefficient(&self, i: usize, j: usize, k: usize) -> Result<BigRational> {
        for x in [i, j, k] {
            self.check_index(x)?;
        }
        let s = self.triple_sum(i, j, k)?;
        let q = s.to_rational().ok_or_else(|| Error::Orthogonality(format!("irrational structure constant {s}")))?;
        let f = BigRational::new(
            BigInt::from(self.classes[i].size) * BigInt::from(self.classes[j].size),
            BigInt::from(self.order),
        );
        Ok(q * f)
    }

    pub fn class_mult_nonempty(&self, i: usize, j: usize, k: usize) -> Result<bool> {
        Ok(self.class_mult_coefficient(i, j, k)?.is_positive())
    }

    /// Whether `C_a C_b = C_c`, by `χ(a)χ(b) = χ(c)χ(1)` for every irreducible `χ`.
    pub fn hj_test(&self, a: usize, b: usize, c: usize) -> Result<bool> {
        for x in [a, b, c] {
            self.check_index(x)?;
            if x == 0 {
                return Err(Error::InvalidParameters("classes must be non-trivial".into()));
            }
        }
        Ok(self.irreducibles.iter().all(|row| &row[a] * &row[b] == &row[c] * &row[0]))
    }

    /// `Σ_χ χ(x)² conj(χ(t)) / χ(1)`; nonzero exactly when `C_t` meets `(C_x)²`.
    pub fn coset_square_sum(&self, x: usize, t: usize) -> Result<Cyclotomic> {
        self.check_index(x)?;
        self.check_index(t)?;
        self.triple_sum(x, x, t)
    }

    /// Maps each table class to a partition class, matching element order, size,
    /// inverse and power maps, and accepting the first assignment under which every
    /// structure constant agrees with the enumerated class products.
    pub fn align(&self, partition: &ClassPartition) -> Result<Vec<usize>> {
        let k = self.num_classes();
        if partition.len() != k || partition.group().order() != self.order {
            return Err(Error::Alignment(format!(
                "table has {k} classes of a group of order {}, partition {} classes of order {}",
                self.order,
                partition.len(),
                partition.group().order()
            )));
        }
        let pc = partition.classes();
        let candidates: Vec<Vec<usize>> = self
            .classes
            .iter()
            .map(|t| (0..k).filter(|&c| pc[c].order == t.order && pc[c].size == t.size).collect())
            .collect();
        let table_sc: Vec<Vec<Vec<BigRational>>> = (0..k)
            .map(|i| (0..k).map(|j| (0..k).map(|l| self.class_mult_coefficient(i, j, l)).collect()).collect())
            .collect::<Result<Vec<Vec<Vec<_>>>>>()?;
        let mut order: Vec<usize> = (0..k).collect();
        order.sort_by_key(|&i| candidates[i].len());
        let mut assign = vec![usize::MAX; k];
        let mut used = vec![false; k];
        let mut tried = 0usize;
        let found = self.align_search(partition, &candidates, &order, 0, &mut assign, &mut used, &mut |a| {
            tried += 1;
            (0..k).all(|i| {
                (0..k).all(|j| {
                    (0..k).all(|l| table_sc[i][j][l] == int(partition.structure_constant(a[i], a[j], a[l]) as u128))
                })
            })
        });
        if found {
            Ok(assign)
        } else {
            Err(Error::Alignment(format!("no consistent assignment among {tried} candidates")))
        }
    }

    #[allow(clippy::too_many_arguments)]
    fn align_search(
        &self,
        partition: &ClassPartition,
        candidates: &[Vec<usize>],
        order: &[usize],
        depth: usize,
        assign: &mut [usize],
        used: &mut [bool],
        accept: &mut dyn FnMut(&[usize]) -> bool,
    ) -> bool {
        if depth == order.len() {
            return self.power_maps_agree(partition, assign) && accept(assign);
        }
        let i = order[depth];
        for &c in &candidates[i] {
            if used[c] {
                continue;
            }
            assign[i] = c;
            used[c] = true;
            let consistent = order[..=depth].iter().all(|&a| {
                let inv = self.classes[a].inverse;
                assign[inv] == usize::MAX || partition.inverse_class(assign[a]) == assign[inv]
            });
            if consistent && self.align_search(partition, candidates, order, depth + 1, assign, used, accept) {
                return true;
            }
            used[c] = false;
            assign[i] = usize::MAX;
        }
        false
    }

    fn power_maps_agree(&self, partition: &ClassPartition, assign: &[usize]) -> bool {
        self.classes.iter().enumerate().all(|(i, c)| {
            c.power_map.iter().all(|(&p, &img)| match partition.power_maps().get(&p) {
                Some(map) => map[assign[i]] == assign[img],
                None => true,
            })
        })
    }

    /// Checks `χ(a)χ(b) = χ(1)/|G| · Σ_{c∈G} χ(ab^c)` for every character and every
    /// pair of classes, the right side taken from enumerated class products.
    pub fn identity_check(&self, partition: &ClassPartition, assign: &[usize]) -> Result<bool> {
        let k = self.num_classes();
        let mut back = vec![0usize; k];
        for (t, &p) in assign.iter().enumerate() {
            back[p] = t;
        }
        let pc = partition.classes();
        for a in 0..k {
            for b in 0..k {
                let counts = partition.class_product_counts(assign[a], assign[b]);
                let denom = BigInt::from(pc[assign[a]].size) * BigInt::from(pc[assign[b]].size);
                for row in &self.irreducibles {
                    let mut rhs = Cyclotomic::zero();
                    for (pk, &n) in counts.iter().enumerate() {
                        if n > 0 {
                            rhs = rhs.checked_add(&row[back[pk]].scale(&int(n as u128)))?;
                        }
                    }
                    let rhs = (&rhs * &row[0]).scale(&BigRational::new(BigInt::one(), denom.clone()));
                    if &row[a] * &row[b] != rhs {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const ALT5: &str = include_str!("../data/tables/Alt5.json");

    #[test]
    fn loads_alt5() {
        let t = CharacterTable::from_json(ALT5).unwrap();
        let degs: Vec<i64> = t.degrees().iter().map(|d| d.to_string().parse().unwrap()).collect();
        assert_eq!(degs, [1, 3, 3, 4, 5]);
    }

    #[test]
    fn rejects_perturbed_value() {
        let mut v: Value = serde_json::from_str(ALT5).unwrap();
        v["irreducibles"][4][2] = Value::from(v["irreducibles"][4][2].as_i64().unwrap() + 1);
        let err = CharacterTable::from_json(&v.to_string()).unwrap_err();
        assert!(matches!(err, Error::Orthogonality(_)), "{err}");
    }
}
