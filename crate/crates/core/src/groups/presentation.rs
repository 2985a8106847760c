use super::Group;
use serde::{Deserialize, Serialize};
use std::fmt;

/// A finite presentation: generator names and relator words.
///
/// A word is a list of signed 1-based generator indices (`-2` is the inverse of the
/// second generator).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Presentation {
    pub generators: Vec<String>,
    pub relators: Vec<Vec<i32>>,
}

impl Presentation {
    pub fn new(generators: Vec<String>, relators: Vec<Vec<i32>>) -> crate::Result<Self> {
        let k = generators.len() as i32;
        for w in &relators {
            if w.iter().any(|&s| s == 0 || s.abs() > k) {
                return Err(crate::Error::invalid("relator references an undeclared generator"));
            }
        }
        Ok(Presentation {
            generators,
            relators,
        })
    }

    /// Builds relators from `(generator, power)` syllables.
    pub fn from_syllables(generators: Vec<String>, rels: Vec<Vec<(i32, i64)>>) -> Self {
        let relators = rels
            .into_iter()
            .map(|syl| {
                let mut w = Vec::new();
                for (g, p) in syl {
                    let letter = if p < 0 { -g } else { g };
                    w.extend(std::iter::repeat_n(letter, p.unsigned_abs() as usize));
                }
                w
            })
            .collect();
        Presentation {
            generators,
            relators,
        }
    }

    /// Evaluates a word on the given generator images.
    pub fn eval_word<G: Group>(group: &G, images: &[G::Elem], word: &[i32]) -> G::Elem {
        let mut acc = group.identity();
        for &s in word {
            let g = &images[(s.unsigned_abs() - 1) as usize];
            let x = if s > 0 { g.clone() } else { group.inv(g) };
            acc = group.mul(&acc, &x);
        }
        acc
    }

    fn fmt_word(&self, w: &[i32]) -> String {
        // run-length encode into syllables
        let mut out = Vec::new();
        let mut i = 0;
        while i < w.len() {
            let mut j = i;
            while j < w.len() && w[j] == w[i] {
                j += 1;
            }
            let name = &self.generators[(w[i].unsigned_abs() - 1) as usize];
            let p = (j - i) as i64 * w[i].signum() as i64;
            out.push(if p == 1 { name.clone() } else { format!("{name}^{p}") });
            i = j;
        }
        if out.is_empty() {
            "1".into()
        } else {
            out.join(" ")
        }
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rels: Vec<String> = self.relators.iter().map(|w| self.fmt_word(w)).collect();
        write!(f, "< {} | {} >", self.generators.join(", "), rels.join(", "))
    }
}
