use std::collections::BTreeMap;

use serde::de::Error as _;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::complex::reduce;
use super::Z2Poly;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Generator {
    pub name: String,
    pub degree: i64,
}

/// Finitely generated differential graded algebra over Z2: a free unital
/// noncommutative algebra on named graded generators, with a differential
/// given on generators and extended as a derivation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dga {
    generators: Vec<Generator>,
    /// differential[i] = image of generator i
    differential: Vec<Z2Poly>,
    /// 0 for integer grading, m > 0 for degrees mod m
    modulus: i64,
    index: BTreeMap<String, u32>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DgaCheckError {
    #[error("d^2 of generator `{0}` is nonzero")]
    SquareNonzero(String),
    #[error("term `{1}` of d({0}) does not have degree deg({0}) - 1")]
    WrongDegree(String, String),
}

impl Dga {
    pub fn new(generators: Vec<Generator>, differential: Vec<Z2Poly>, modulus: i64) -> Self {
        assert_eq!(generators.len(), differential.len());
        let index = generators
            .iter()
            .enumerate()
            .map(|(i, g)| (g.name.clone(), i as u32))
            .collect();
        Dga {
            generators,
            differential,
            modulus,
            index,
        }
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn modulus(&self) -> i64 {
        self.modulus
    }

    pub fn degree(&self, id: u32) -> i64 {
        self.generators[id as usize].degree
    }

    pub fn name(&self, id: u32) -> &str {
        &self.generators[id as usize].name
    }

    pub fn id_of(&self, name: &str) -> Option<u32> {
        self.index.get(name).copied()
    }

    pub fn d(&self, id: u32) -> &Z2Poly {
        &self.differential[id as usize]
    }

    pub fn d_poly(&self, p: &Z2Poly) -> Z2Poly {
        p.derive(&|g| self.differential[g as usize].clone())
    }

    fn word_degree(&self, word: &[u32]) -> i64 {
        reduce(word.iter().map(|&g| self.degree(g)).sum(), self.modulus)
    }

    fn word_name(&self, word: &[u32]) -> String {
        if word.is_empty() {
            "1".to_string()
        } else {
            word.iter()
                .map(|&g| self.name(g))
                .collect::<Vec<_>>()
                .join("*")
        }
    }
}

/// Verify d^2 = 0 on every generator (expanding the derivation rule) and that
/// every term of d(g) has degree deg(g) - 1, reduced mod the grading modulus.
pub fn dga_check(dga: &Dga) -> Result<(), DgaCheckError> {
    for (i, gen) in dga.generators().iter().enumerate() {
        let dg = dga.d(i as u32);
        let want = reduce(gen.degree - 1, dga.modulus());
        for word in dg.words() {
            if dga.word_degree(word) != want {
                return Err(DgaCheckError::WrongDegree(
                    gen.name.clone(),
                    dga.word_name(word),
                ));
            }
        }
        if !dga.d_poly(dg).is_zero() {
            return Err(DgaCheckError::SquareNonzero(gen.name.clone()));
        }
    }
    Ok(())
}

/// Wire format: a polynomial is a list of words, a word a list of generator
/// names, the empty word standing for 1.
#[derive(Serialize, Deserialize)]
struct DgaWire {
    generators: Vec<Generator>,
    d: BTreeMap<String, Vec<Vec<String>>>,
    #[serde(default)]
    modulus: i64,
}

impl Serialize for Dga {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let d = self
            .generators
            .iter()
            .enumerate()
            .map(|(i, g)| {
                let words = self.differential[i]
                    .words()
                    .map(|w| w.iter().map(|&id| self.name(id).to_string()).collect())
                    .collect();
                (g.name.clone(), words)
            })
            .collect();
        DgaWire {
            generators: self.generators.clone(),
            d,
            modulus: self.modulus,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Dga {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        let wire = DgaWire::deserialize(de)?;
        let index: BTreeMap<String, u32> = wire
            .generators
            .iter()
            .enumerate()
            .map(|(i, g)| (g.name.clone(), i as u32))
            .collect();
        if index.len() != wire.generators.len() {
            return Err(D::Error::custom("duplicate generator name"));
        }
        let mut differential = vec![Z2Poly::zero(); wire.generators.len()];
        for (name, words) in wire.d {
            let Some(&id) = index.get(&name) else {
                return Err(D::Error::custom(format!("unknown generator `{name}` in d")));
            };
            let mut poly = Z2Poly::zero();
            for w in words {
                let word = w
                    .iter()
                    .map(|n| {
                        index
                            .get(n)
                            .copied()
                            .ok_or_else(|| D::Error::custom(format!("unknown generator `{n}`")))
                    })
                    .collect::<Result<Vec<u32>, _>>()?;
                poly.add_assign(&Z2Poly::from_word(word));
            }
            differential[id as usize] = poly;
        }
        Ok(Dga::new(wire.generators, differential, wire.modulus))
    }
}
