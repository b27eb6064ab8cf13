//! Generators for the explicit map families.
//!
//! * converging: `f_k` on a graph with edges `a, b, c, d, x_0..x_{2k-1},
//!   y_0..y_{2k-1}`, with boundary loop `σ_k`; growth rates tend to 1.
//! * periodic: the edge shift `x_i ↦ x_{i+1}`, `x_{2g} ↦ x_0⁻¹` on `2g + 1`
//!   parallel edges, with boundary loop `σ_g`.
//! * pv: `y_i ↦ y_{i+1}`, `y_n ↦ y_0 y_1` on a rose; no boundary loop.
//!
//! Graph incidence is never written down by hand: it is inferred from the
//! images and the boundary loop.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::graphmap::{infer_map_graph, GraphError, GraphMap};
use crate::spectral::IntPolynomial;
use crate::words::{cyclic_reduce, Alphabet, CyclicWord, Letter, Word};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("{family} family needs parameter >= {min}, got {got}")]
    Parameter { family: Family, min: usize, got: usize },
    #[error("unknown family `{0}`")]
    UnknownFamily(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    Converging,
    Periodic,
    Pv,
}

impl Family {
    pub fn min_param(self) -> usize {
        match self {
            Family::Converging | Family::Periodic => 1,
            Family::Pv => 2,
        }
    }

    /// Tag used on the command line and in documents.
    pub fn tag(self) -> &'static str {
        match self {
            Family::Converging => "brinkmann",
            Family::Periodic => "periodic",
            Family::Pv => "pv",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Family {
    type Err = FamilyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "brinkmann" | "converging" => Ok(Family::Converging),
            "periodic" => Ok(Family::Periodic),
            "pv" => Ok(Family::Pv),
            other => Err(FamilyError::UnknownFamily(other.to_string())),
        }
    }
}

/// A family tag with an in-range parameter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FamilySpec {
    family: Family,
    param: usize,
}

impl FamilySpec {
    pub fn new(family: Family, param: usize) -> Result<Self, FamilyError> {
        if param < family.min_param() {
            return Err(FamilyError::Parameter { family, min: family.min_param(), got: param });
        }
        Ok(FamilySpec { family, param })
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn param(&self) -> usize {
        self.param
    }

    pub fn build(&self) -> Result<FamilyMember, FamilyError> {
        match self.family {
            Family::Converging => converging_family(self.param),
            Family::Periodic => periodic_family(self.param),
            Family::Pv => pv_family(self.param),
        }
    }
}

/// A generated map together with its boundary loop, when it has one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyMember {
    pub spec: FamilySpec,
    pub map: GraphMap,
    pub boundary: Option<CyclicWord>,
}

impl FamilyMember {
    pub fn alphabet(&self) -> &Alphabet {
        self.map.alphabet()
    }
}

fn word(letters: &[Letter]) -> Word {
    Word::from_letters(letters.iter().copied())
}

fn build(
    spec: FamilySpec,
    names: Vec<String>,
    images: impl Fn(&Alphabet) -> Vec<Word>,
    boundary: Option<&dyn Fn(&Alphabet) -> Word>,
) -> Result<FamilyMember, FamilyError> {
    let al = Alphabet::new(names).map_err(GraphError::from)?;
    let images = images(&al);
    let sigma = boundary.map(|b| b(&al));
    let loops: Vec<Word> = sigma.iter().cloned().collect();
    let graph = infer_map_graph(&al, &images, &loops)?;
    let map = GraphMap::from_words(graph, images)?;
    let boundary = sigma.map(|s| {
        let (core, conjugator) = cyclic_reduce(&s);
        debug_assert!(conjugator.is_empty());
        core
    });
    Ok(FamilyMember { spec, map, boundary })
}

/// Edge names `a, b, c, d, x0..x{2k-1}, y0..y{2k-1}`.
pub fn converging_edge_names(k: usize) -> Vec<String> {
    let mut names: Vec<String> = ["a", "b", "c", "d"].iter().map(|s| s.to_string()).collect();
    names.extend((0..2 * k).map(|i| format!("x{i}")));
    names.extend((0..2 * k).map(|i| format!("y{i}")));
    names
}

/// `f_k` with its boundary loop `σ_k`.
pub fn converging_family(k: usize) -> Result<FamilyMember, FamilyError> {
    let spec = FamilySpec::new(Family::Converging, k)?;
    let top = 2 * k - 1;
    let images = |al: &Alphabet| {
        let l = |n: &str| al.letter(n);
        let x = |i: usize| al.letter(&format!("x{i}"));
        let y = |i: usize| al.letter(&format!("y{i}"));
        let mut out = vec![
            word(&[l("a"), x(0), y(0)]),
            word(&[l("b"), y(0).inverse(), x(0).inverse()]),
            word(&[l("d")]),
            word(&[l("d"), y(1), x(0)]),
        ];
        for i in 0..top {
            out.push(word(&[x(i + 1)]));
        }
        out.push(word(&[l("a").inverse(), l("b"), y(0).inverse()]));
        for i in 0..top {
            out.push(word(&[y(i + 1)]));
        }
        out.push(word(&[l("c").inverse(), l("b")]));
        out
    };
    let sigma = |al: &Alphabet| {
        let l = |n: &str| al.letter(n);
        let x = |i: usize| al.letter(&format!("x{i}"));
        let y = |i: usize| al.letter(&format!("y{i}"));
        let mut s = Vec::with_capacity(8 * k + 8);
        for i in 0..2 * k {
            s.push(x(i));
            s.push(y(i));
        }
        s.extend([
            l("a").inverse(),
            l("b"),
            y(0).inverse(),
            l("c").inverse(),
            l("d"),
            x(top).inverse(),
            l("b").inverse(),
            l("c"),
        ]);
        // descending tail x_{2k-2}⁻¹ y_{2k-1}⁻¹ … x_0⁻¹ y_1⁻¹
        for j in (0..top).rev() {
            s.push(x(j).inverse());
            s.push(y(j + 1).inverse());
        }
        s.extend([l("d").inverse(), l("a")]);
        word(&s)
    };
    build(spec, converging_edge_names(k), images, Some(&sigma))
}

/// The periodic edge shift on `2g + 1` edges, with boundary loop `σ_g`.
pub fn periodic_family(g: usize) -> Result<FamilyMember, FamilyError> {
    let spec = FamilySpec::new(Family::Periodic, g)?;
    let n = 2 * g + 1;
    let names: Vec<String> = (0..n).map(|i| format!("x{i}")).collect();
    let images = |al: &Alphabet| {
        let x = |i: usize| al.letter(&format!("x{i}"));
        let mut out: Vec<Word> = (0..n - 1).map(|i| word(&[x(i + 1)])).collect();
        out.push(word(&[x(0).inverse()]));
        out
    };
    let sigma = |al: &Alphabet| {
        let x = |i: usize| al.letter(&format!("x{i}"));
        let forward = (0..n).map(x);
        let backward = (0..n).map(|i| x(i).inverse());
        Word::from_letters(forward.chain(backward))
    };
    build(spec, names, images, Some(&sigma))
}

/// The automorphism `y_i ↦ y_{i+1}`, `y_n ↦ y_0 y_1` of the free group of rank `n + 1`.
pub fn pv_family(n: usize) -> Result<FamilyMember, FamilyError> {
    let spec = FamilySpec::new(Family::Pv, n)?;
    let names: Vec<String> = (0..=n).map(|i| format!("y{i}")).collect();
    let images = |al: &Alphabet| {
        let y = |i: usize| al.letter(&format!("y{i}"));
        let mut out: Vec<Word> = (0..n).map(|i| word(&[y(i + 1)])).collect();
        out.push(word(&[y(0), y(1)]));
        out
    };
    build(spec, names, images, None)
}

/// `x^(4k+2) − x^(4k+1) − 4x^(2k+1) − x + 1`, the factor carrying the growth rate.
pub fn closed_form_factor(k: usize) -> Result<IntPolynomial, FamilyError> {
    FamilySpec::new(Family::Converging, k)?;
    Ok(IntPolynomial::from_terms(&[(4 * k + 2, 1), (4 * k + 1, -1), (2 * k + 1, -4), (1, -1), (0, 1)]))
}

/// `(x − 1)² (x^(4k+2) − x^(4k+1) − 4x^(2k+1) − x + 1)`, expanded.
pub fn closed_form_charpoly(k: usize) -> Result<IntPolynomial, FamilyError> {
    let factor = closed_form_factor(k)?;
    Ok(IntPolynomial::from_i64s(&[-1, 1]).pow(2).mul(&factor))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::EdgeId;

    #[test]
    fn parameter_ranges() {
        assert!(matches!(converging_family(0), Err(FamilyError::Parameter { .. })));
        assert!(matches!(periodic_family(0), Err(FamilyError::Parameter { .. })));
        assert!(matches!(pv_family(1), Err(FamilyError::Parameter { .. })));
        assert!(closed_form_charpoly(0).is_err());
        assert_eq!("converging".parse::<Family>().unwrap(), Family::Converging);
        assert!("other".parse::<Family>().is_err());
    }

    #[test]
    fn sigma_one_as_printed() {
        let m = converging_family(1).unwrap();
        let sigma = m.boundary.as_ref().unwrap();
        assert_eq!(
            m.alphabet().render(sigma.letters()),
            "x0 y0 x1 y1 a^-1 b y0^-1 c^-1 d x1^-1 b^-1 c x0^-1 y1^-1 d^-1 a"
        );
        assert_eq!(sigma.len(), 16);
    }

    #[test]
    fn images_as_printed_at_k2() {
        let m = converging_family(2).unwrap();
        let al = m.alphabet();
        let img = |e: &str| al.render(m.map.image(al.edge(e).unwrap()));
        assert_eq!(img("a"), "a x0 y0");
        assert_eq!(img("b"), "b y0^-1 x0^-1");
        assert_eq!(img("c"), "d");
        assert_eq!(img("d"), "d y1 x0");
        assert_eq!(img("x2"), "x3");
        assert_eq!(img("x3"), "a^-1 b y0^-1");
        assert_eq!(img("y0"), "y1");
        assert_eq!(img("y3"), "c^-1 b");
        assert_eq!(m.map.graph().edge_count(), 12);
    }

    #[test]
    fn closed_form_at_one() {
        let p = closed_form_charpoly(1).unwrap();
        assert_eq!(p.degree(), Some(8));
        let factor = IntPolynomial::from_i64s(&[1, -1, 0, -4, 0, -1, 1]);
        assert_eq!(closed_form_factor(1).unwrap(), factor);
        assert_eq!(p, IntPolynomial::from_i64s(&[1, -2, 1]).mul(&factor));
    }

    #[test]
    fn pv_is_a_rose_without_boundary() {
        let m = pv_family(2).unwrap();
        assert_eq!(m.map.graph().vertex_count(), 1);
        assert!(m.boundary.is_none());
        assert_eq!(m.alphabet().render(m.map.image(EdgeId(2))), "y0 y1");
    }

    #[test]
    fn periodic_graph_is_a_theta() {
        for g in 1..=4 {
            let m = periodic_family(g).unwrap();
            let graph = m.map.graph();
            assert_eq!(graph.vertex_count(), 2);
            for e in graph.alphabet().edges() {
                let (s, t) = graph.endpoints(e);
                assert_ne!(s, t);
            }
        }
    }
}
