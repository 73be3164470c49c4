use std::collections::BTreeSet;

/// Element of the free associative unital Z2-algebra on a generator set.
///
/// A polynomial is a set of words (a word is a sequence of generator ids, the
/// empty word is the unit); a word present in the set has coefficient 1.
/// Addition is symmetric difference, so coefficients cancel mod 2.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Z2Poly {
    words: BTreeSet<Vec<u32>>,
}

impl Z2Poly {
    pub fn zero() -> Self {
        Z2Poly::default()
    }

    pub fn one() -> Self {
        let mut words = BTreeSet::new();
        words.insert(Vec::new());
        Z2Poly { words }
    }

    pub fn gen(id: u32) -> Self {
        Z2Poly::from_word(vec![id])
    }

    pub fn from_word(word: Vec<u32>) -> Self {
        let mut words = BTreeSet::new();
        words.insert(word);
        Z2Poly { words }
    }

    pub fn from_words<I: IntoIterator<Item = Vec<u32>>>(iter: I) -> Self {
        let mut p = Z2Poly::zero();
        for w in iter {
            p.toggle(w);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.words.is_empty()
    }

    pub fn words(&self) -> impl Iterator<Item = &[u32]> {
        self.words.iter().map(|w| w.as_slice())
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    fn toggle(&mut self, word: Vec<u32>) {
        if !self.words.remove(&word) {
            self.words.insert(word);
        }
    }

    pub fn add(&self, rhs: &Z2Poly) -> Z2Poly {
        let mut out = self.clone();
        for w in &rhs.words {
            out.toggle(w.clone());
        }
        out
    }

    pub fn add_assign(&mut self, rhs: &Z2Poly) {
        for w in &rhs.words {
            self.toggle(w.clone());
        }
    }

    pub fn mul(&self, rhs: &Z2Poly) -> Z2Poly {
        let mut out = Z2Poly::zero();
        for a in &self.words {
            for b in &rhs.words {
                let mut w = a.clone();
                w.extend_from_slice(b);
                out.toggle(w);
            }
        }
        out
    }

    /// Evaluate under an assignment of Z2 values to generators: a word maps to
    /// the product of its letters, the empty word to 1.
    pub fn eval(&self, values: &[u8]) -> u8 {
        let mut acc = 0u8;
        for w in &self.words {
            if w.iter().all(|&g| values[g as usize] == 1) {
                acc ^= 1;
            }
        }
        acc
    }

    /// Extend a map on generators as a derivation: d(uv) = d(u)v + u d(v),
    /// with `d_gen` giving the image of each generator.
    pub fn derive(&self, d_gen: &dyn Fn(u32) -> Z2Poly) -> Z2Poly {
        let mut out = Z2Poly::zero();
        for w in &self.words {
            for i in 0..w.len() {
                let dg = d_gen(w[i]);
                for mid in &dg.words {
                    let mut term = Vec::with_capacity(w.len() - 1 + mid.len());
                    term.extend_from_slice(&w[..i]);
                    term.extend_from_slice(mid);
                    term.extend_from_slice(&w[i + 1..]);
                    out.toggle(term);
                }
            }
        }
        out
    }

    /// Image of this polynomial in the linearization determined by `values`:
    /// substitute every letter s by (s' + eps(s)), expand, and keep the words
    /// of length exactly one. The letter s survives in a word exactly when
    /// every other letter has eps-value 1.
    pub fn linearize(&self, values: &[u8]) -> Z2Poly {
        let mut out = Z2Poly::zero();
        for w in &self.words {
            for i in 0..w.len() {
                let rest_ones = w
                    .iter()
                    .enumerate()
                    .all(|(j, &g)| j == i || values[g as usize] == 1);
                if rest_ones {
                    out.toggle(vec![w[i]]);
                }
            }
        }
        out
    }
}
