//! Seeded generation of small standpoint knowledge bases.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::model::{Concept, Formula, Role, StandpointExpr, StandpointKb, TBoxAxiom};
use crate::normalizer::{count_precisifications, normalize_kb};

/// Shape of the generated knowledge bases.
#[derive(Debug, Clone)]
pub struct Fragment {
    pub concepts: usize,
    pub roles: usize,
    pub standpoints: usize,
    pub max_formulas: usize,
    /// Nesting depth of class expressions.
    pub concept_depth: usize,
    /// Nesting depth of the Boolean structure above the modalities.
    pub formula_depth: usize,
    pub max_plain_axioms: usize,
    /// Upper bound on the number of precisifications after normalisation.
    pub max_precisifications: usize,
}

impl Default for Fragment {
    fn default() -> Self {
        Fragment {
            concepts: 3,
            roles: 1,
            standpoints: 2,
            max_formulas: 3,
            concept_depth: 2,
            formula_depth: 2,
            max_plain_axioms: 1,
            max_precisifications: 3,
        }
    }
}

pub const NAMESPACE: &str = "http://example.org/random#";
const CONCEPT_NAMES: [&str; 6] = ["A", "B", "C", "D", "E", "F"];
const ROLE_NAMES: [&str; 3] = ["r", "t", "w"];
const STANDPOINT_NAMES: [&str; 4] = ["s", "t", "u", "v"];

struct Gen<'a, R> {
    rng: &'a mut R,
    f: &'a Fragment,
}

impl<R: Rng> Gen<'_, R> {
    fn concept_name(&mut self) -> Concept {
        let k = self.rng.random_range(0..self.f.concepts.clamp(1, CONCEPT_NAMES.len()));
        Concept::named(NAMESPACE, CONCEPT_NAMES[k])
    }

    fn role(&mut self) -> Option<Role> {
        let n = self.f.roles.min(ROLE_NAMES.len());
        (n > 0).then(|| Role::named(NAMESPACE, ROLE_NAMES[self.rng.random_range(0..n)]))
    }

    fn concept(&mut self, depth: usize) -> Concept {
        if depth == 0 || self.rng.random_bool(0.35) {
            return match self.rng.random_range(0..10) {
                0 => Concept::Top,
                1 => Concept::Bottom,
                _ => self.concept_name(),
            };
        }
        let d = depth - 1;
        match self.rng.random_range(0..8) {
            0 => Concept::not(self.concept(d)),
            1 | 2 => Concept::and(self.concept(d), self.concept(d)),
            3 => Concept::or(self.concept(d), self.concept(d)),
            k => match self.role() {
                None => Concept::not(self.concept(d)),
                Some(r) => match k {
                    4 => Concept::some(r, self.concept(d)),
                    5 => Concept::all(r, self.concept(d)),
                    6 => Concept::at_least(self.rng.random_range(1..=2), r, self.concept(d)),
                    _ => Concept::at_most(self.rng.random_range(0..=1), r, self.concept(d)),
                },
            },
        }
    }

    fn axiom(&mut self) -> TBoxAxiom {
        let (c, d) = (self.concept(self.f.concept_depth), self.concept(self.f.concept_depth));
        if self.rng.random_bool(0.2) {
            TBoxAxiom::equiv(c, d)
        } else {
            TBoxAxiom::sub(c, d)
        }
    }

    fn standpoint(&mut self) -> StandpointExpr {
        let n = self.f.standpoints.min(STANDPOINT_NAMES.len());
        let name = |g: &mut Self| {
            if n == 0 || g.rng.random_bool(0.2) {
                StandpointExpr::Star
            } else {
                StandpointExpr::name(STANDPOINT_NAMES[g.rng.random_range(0..n)])
            }
        };
        match self.rng.random_range(0..8) {
            0 => StandpointExpr::union(name(self), name(self)),
            1 => StandpointExpr::intersection(name(self), name(self)),
            2 => StandpointExpr::minus(name(self), name(self)),
            _ => name(self),
        }
    }

    fn modal(&mut self) -> Formula {
        let e = self.standpoint();
        let atom = Formula::atom(self.axiom());
        let f = if self.rng.random_bool(0.5) {
            Formula::boxed(e, atom)
        } else {
            Formula::diamond(e, atom)
        };
        if self.rng.random_bool(0.25) {
            Formula::not(f)
        } else {
            f
        }
    }

    fn formula(&mut self, depth: usize) -> Formula {
        if depth == 0 || self.rng.random_bool(0.5) {
            return match self.rng.random_range(0..6) {
                0 => Formula::atom(self.axiom()),
                1 => Formula::not(Formula::atom(self.axiom())),
                _ => self.modal(),
            };
        }
        let (a, b) = (self.formula(depth - 1), self.formula(depth - 1));
        if self.rng.random_bool(0.5) {
            Formula::and(a, b)
        } else {
            Formula::or(a, b)
        }
    }
}

/// One knowledge base in the parser's shape (negation only on axioms and
/// modalities, modalities only on axioms) whose normal form needs at most
/// `fragment.max_precisifications` precisifications.
pub fn random_kb<R: Rng>(rng: &mut R, fragment: &Fragment) -> StandpointKb {
    loop {
        let mut g = Gen { rng: &mut *rng, f: fragment };
        let mut kb = StandpointKb::new("http://example.org/random");
        let formulas = g.rng.random_range(1..=fragment.max_formulas.max(1));
        for _ in 0..formulas {
            let depth = fragment.formula_depth;
            kb.formulas.push(g.formula(depth));
        }
        let plain = g.rng.random_range(0..=fragment.max_plain_axioms);
        for _ in 0..plain {
            let a = g.axiom();
            kb.axioms.push(a);
        }
        let normal = normalize_kb(&kb).expect("generated formulas have modal depth one");
        if count_precisifications(&normal) <= fragment.max_precisifications {
            return kb;
        }
    }
}

/// `count` knowledge bases from a fixed seed.
pub fn random_kbs(seed: u64, count: usize, fragment: &Fragment) -> Vec<StandpointKb> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| random_kb(&mut rng, fragment)).collect()
}
