//! Checks on a graph map: boundary-loop invariance, genus of the
//! carried surface, singularity indices from gates and taken turns, and certified growth rates
//! of the converging family.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_rational::{BigRational, Rational64};
use num_traits::{One, Signed, Zero};
use petgraph::unionfind::UnionFind;
use rayon::prelude::*;
use thiserror::Error;

use crate::families::{closed_form_charpoly, closed_form_factor, converging_edge_names, converging_family};
use crate::graphmap::{Direction, Graph, GraphError, GraphMap, TrainTrackCertificate};
use crate::spectral::{
    perron_root, signed_transition_matrix, to_decimal, transition_matrix, RationalInterval,
    RootError, Rounding,
};
use crate::words::{cyclic_reduce, CyclicMatch, CyclicWord, Letter, Word, WordError};

/// Largest `k` for which the closed form is checked against the matrix.
pub const MATRIX_CROSS_CHECK_MAX_K: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AnalysisError {
    #[error("loop is not a closed edge path")]
    NotClosed,
    #[error("graph is disconnected")]
    Disconnected,
    #[error("k range must be nonempty and start at 1 or more")]
    BadRange,
    #[error("closed-form characteristic polynomial disagrees with the matrix at k = {0}")]
    ClosedFormMismatch(usize),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Word(#[from] WordError),
    #[error(transparent)]
    Root(#[from] RootError),
}

/// Outcome of comparing `f(σ)` with `σ` as cyclic words.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SigmaWitness {
    /// Cyclically reduced image of the loop.
    pub image: CyclicWord,
    /// Conjugator split off while cyclically reducing `f(σ)`.
    pub conjugator: Word,
    /// How `σ` is carried onto its image, if it is.
    pub matched: Option<CyclicMatch>,
}

impl SigmaWitness {
    pub fn invariant(&self) -> bool {
        self.matched.is_some()
    }
}

/// Checks that the free homotopy class of `sigma` is preserved, up to orientation.
pub fn verify_sigma_invariance(map: &GraphMap, sigma: &[Letter]) -> Result<SigmaWitness, AnalysisError> {
    let graph = map.graph();
    match graph.path_endpoints(sigma) {
        Ok(Some((s, t))) if s == t => {}
        _ => return Err(AnalysisError::NotClosed),
    }
    let (sigma_core, _) = cyclic_reduce(&Word::from_letters(sigma.iter().copied()));
    let image = map.apply(sigma)?;
    let (core, conjugator) = cyclic_reduce(&image);
    let matched = sigma_core.find_match(&core, true);
    Ok(SigmaWitness { image: core, conjugator, matched })
}

/// Rank of `π₁` and, when it is even, the genus of a once-punctured
/// orientable surface with that fundamental group.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Carrier {
    pub rank: usize,
    pub genus: Option<usize>,
}

pub fn genus_and_puncture(graph: &Graph) -> Result<Carrier, AnalysisError> {
    if !graph.is_connected() {
        return Err(AnalysisError::Disconnected);
    }
    let rank = graph.rank() as usize;
    let genus = rank.is_multiple_of(2).then_some(rank / 2);
    Ok(Carrier { rank, genus })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndexRow {
    pub vertex: String,
    pub valence: usize,
    pub gates: usize,
    /// Gates joined by taken turns: sides of the infinitesimal polygon.
    pub polygon_sides: usize,
    pub prongs: usize,
    /// `1 − prongs/2`.
    pub index: Rational64,
}

impl IndexRow {
    pub fn is_singular(&self) -> bool {
        !self.index.is_zero()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct IndexTable {
    pub rows: Vec<IndexRow>,
}

impl IndexTable {
    pub fn sum(&self) -> Rational64 {
        self.rows.iter().map(|r| r.index).sum()
    }

    pub fn singular(&self) -> impl Iterator<Item = &IndexRow> {
        self.rows.iter().filter(|r| r.is_singular())
    }

    pub fn regular(&self) -> impl Iterator<Item = &IndexRow> {
        self.rows.iter().filter(|r| !r.is_singular())
    }
}

impl fmt::Display for IndexTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "vertex,valence,gates,polygon_sides,prongs,index")?;
        for r in &self.rows {
            writeln!(f, "{},{},{},{},{},{}", r.vertex, r.valence, r.gates, r.polygon_sides, r.prongs, r.index)?;
        }
        write!(f, "sum,,,,,{}", self.sum())
    }
}

/// Prong count from the gates at a vertex and the taken turns joining them.
///
/// Taken turns between distinct gates are the sides of the vertex's
/// infinitesimal polygon. A closed polygon (or no sides at all) gives one
/// prong per gate. An open chain through every gate leaves one gap, which
/// faces a puncture, and gives one prong fewer.
fn prong_count(gates: usize, sides: &BTreeSet<(usize, usize)>) -> usize {
    if gates < 2 || sides.is_empty() {
        return gates;
    }
    let mut degree = vec![0usize; gates];
    for &(i, j) in sides {
        degree[i] += 1;
        degree[j] += 1;
    }
    let mut uf = UnionFind::<usize>::new(gates);
    for &(i, j) in sides {
        uf.union(i, j);
    }
    let connected = (1..gates).all(|i| uf.equiv(0, i));
    let open_chain = connected
        && sides.len() == gates - 1
        && degree.iter().all(|&d| d <= 2)
        && gates > 2;
    if open_chain {
        gates - 1
    } else {
        gates
    }
}

/// Index `1 − prongs/2` at every vertex of a train track map.
pub fn singularity_indices(map: &GraphMap) -> Result<IndexTable, AnalysisError> {
    if let TrainTrackCertificate::Illegal(bad) = map.train_track_certificate()? {
        return Err(GraphError::NotTrainTrack(bad).into());
    }
    let derivative = map.derivative_map()?;
    let taken = map.taken_turns()?;
    let graph = map.graph();
    let rows = graph
        .vertices()
        .map(|v| {
            let gates = derivative.gates_at(graph, v);
            let gate_of = |d: Direction| gates.iter().position(|g| g.contains(&d));
            let sides: BTreeSet<(usize, usize)> = taken
                .iter()
                .filter_map(|t| {
                    let (x, y) = t.directions();
                    let (i, j) = (gate_of(x)?, gate_of(y)?);
                    (i != j).then_some((i.min(j), i.max(j)))
                })
                .collect();
            let prongs = prong_count(gates.len(), &sides);
            IndexRow {
                vertex: graph.vertex_name(v).to_string(),
                valence: graph.valence(v),
                gates: gates.len(),
                polygon_sides: sides.len(),
                prongs,
                index: Rational64::one() - Rational64::new(prongs as i64, 2),
            }
        })
        .collect();
    Ok(IndexTable { rows })
}

/// Indices sum to the Euler characteristic `2 − 2·genus` of the closed surface.
pub fn index_sum_check(table: &IndexTable, genus: usize) -> bool {
    !table.rows.is_empty() && table.sum() == Rational64::from_integer(2 - 2 * genus as i64)
}

/// Certified growth rate of `f_k`, with the residual of
/// `λ = 1 + λ^(4k+2) − λ^(4k+1) − 4λ^(2k+1)` and the lower bound
/// `λ⁻¹ ≥ 1 − λ^−(4k+1) − 4λ^−(2k+1)` checked at the enclosure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrowthRecord {
    pub k: usize,
    pub enclosure: RationalInterval,
    /// `|residual|` at the midpoint of the enclosure.
    pub residual: BigRational,
    /// Signed residual at the lower and upper endpoints.
    pub residual_lo: BigRational,
    pub residual_hi: BigRational,
    /// Lower bound on `λ⁻¹` holds at the lower endpoint.
    pub inverse_bound_ok: bool,
}

impl GrowthRecord {
    /// Residual changes sign across the enclosure (or the enclosure is an exact root).
    pub fn residual_brackets_root(&self) -> bool {
        let (lo, hi) = (&self.residual_lo, &self.residual_hi);
        lo.is_zero() || hi.is_zero() || (lo.is_negative() != hi.is_negative())
    }
}

/// `1 + λ^(4k+2) − λ^(4k+1) − 4λ^(2k+1) − λ`, zero exactly at roots of the factor.
pub fn growth_residual(k: usize, lambda: &BigRational) -> BigRational {
    let four = BigRational::from_integer(BigInt::from(4));
    BigRational::one() + pow(lambda, 4 * k + 2) - pow(lambda, 4 * k + 1) - four * pow(lambda, 2 * k + 1) - lambda
}

/// `λ⁻¹ ≥ 1 − λ^−(4k+1) − 4λ^−(2k+1)`, evaluated exactly.
pub fn inverse_bound_holds(k: usize, lambda: &BigRational) -> bool {
    let inv = lambda.recip();
    let four = BigRational::from_integer(BigInt::from(4));
    let rhs = BigRational::one() - pow(&inv, 4 * k + 1) - four * pow(&inv, 2 * k + 1);
    inv >= rhs
}

fn pow(x: &BigRational, e: usize) -> BigRational {
    num_traits::pow::pow(x.clone(), e)
}

/// Confirms `char_poly(M_k)` equals the closed form.
pub fn closed_form_matches_matrix(k: usize) -> Result<bool, AnalysisError> {
    let member = converging_family(k).map_err(|e| match e {
        crate::families::FamilyError::Graph(g) => AnalysisError::Graph(g),
        _ => AnalysisError::BadRange,
    })?;
    let expected = closed_form_charpoly(k).map_err(|_| AnalysisError::BadRange)?;
    Ok(transition_matrix(&member.map).char_poly() == expected)
}

pub fn growth_record(k: usize, tol: &BigRational) -> Result<GrowthRecord, AnalysisError> {
    let factor = closed_form_factor(k).map_err(|_| AnalysisError::BadRange)?;
    if k <= MATRIX_CROSS_CHECK_MAX_K && !closed_form_matches_matrix(k)? {
        return Err(AnalysisError::ClosedFormMismatch(k));
    }
    // the factor is −4 at 1, so its largest real root lies above 1
    let enclosure = perron_root(&factor, &BigRational::one(), tol)?;
    let mid_residual = growth_residual(k, &enclosure.midpoint()).abs();
    let residual_lo = growth_residual(k, enclosure.lo());
    let residual_hi = growth_residual(k, enclosure.hi());
    let inverse_bound_ok = inverse_bound_holds(k, enclosure.lo());
    Ok(GrowthRecord { k, enclosure, residual: mid_residual, residual_lo, residual_hi, inverse_bound_ok })
}

/// Growth records for each `k`, computed in parallel, returned in input order.
pub fn growth_table(ks: &[usize], tol: &BigRational) -> Result<Vec<GrowthRecord>, AnalysisError> {
    if ks.is_empty() || ks.contains(&0) {
        return Err(AnalysisError::BadRange);
    }
    if !tol.is_positive() {
        return Err(RootError::BadTolerance.into());
    }
    ks.par_iter().map(|&k| growth_record(k, tol)).collect()
}

impl GrowthRecord {
    /// One row under [`GROWTH_CSV_HEADER`].
    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{}",
            self.k,
            to_decimal(self.enclosure.lo(), 15, Rounding::Down),
            to_decimal(self.enclosure.hi(), 15, Rounding::Up),
            to_decimal(&self.residual, 15, Rounding::Nearest),
            self.inverse_bound_ok
        )
    }
}

/// Column names are fixed by the output format: `eq2_residual` holds
/// [`GrowthRecord::residual`] and `ineq3_ok` holds [`GrowthRecord::inverse_bound_ok`].
pub const GROWTH_CSV_HEADER: &str = "k,lambda_lo,lambda_hi,eq2_residual,ineq3_ok";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CheckKind {
    Validate,
    TrainTrack,
    Primitive,
    Abelianization,
    SigmaInvariant,
    Palindromic,
    CharpolyClosedForm,
    Genus,
    IndexSum,
}

impl CheckKind {
    pub fn name(self) -> &'static str {
        match self {
            CheckKind::Validate => "validate",
            CheckKind::TrainTrack => "train_track",
            CheckKind::Primitive => "primitive",
            CheckKind::Abelianization => "abelianization",
            CheckKind::SigmaInvariant => "sigma_invariant",
            CheckKind::Palindromic => "palindromic",
            CheckKind::CharpolyClosedForm => "charpoly_matches_closed_form",
            CheckKind::Genus => "genus",
            CheckKind::IndexSum => "index_sum",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skip => "SKIP",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub kind: CheckKind,
    pub status: Status,
    pub witness: String,
}

/// Which checks to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    All,
    TrainTrack,
    Primitive,
    Sigma,
    Indices,
    Charpoly,
}

impl Suite {
    fn includes(self, kind: CheckKind) -> bool {
        use CheckKind::*;
        match self {
            Suite::All => true,
            Suite::TrainTrack => matches!(kind, Validate | TrainTrack),
            Suite::Primitive => matches!(kind, Validate | Primitive),
            Suite::Sigma => matches!(kind, Validate | SigmaInvariant),
            Suite::Indices => matches!(kind, Validate | TrainTrack | Genus | IndexSum),
            Suite::Charpoly => matches!(kind, Validate | Abelianization | Palindromic | CharpolyClosedForm),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct VerificationReport {
    pub checks: Vec<Check>,
    pub genus: Option<Carrier>,
    pub index_table: Option<IndexTable>,
}

impl VerificationReport {
    /// No selected check failed.
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    pub fn status(&self, kind: CheckKind) -> Option<Status> {
        self.checks.iter().find(|c| c.kind == kind).map(|c| c.status)
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(f, "{:<30} {}  {}", c.kind.name(), c.status, c.witness)?;
        }
        if let Some(t) = &self.index_table {
            writeln!(f, "{t}")?;
        }
        Ok(())
    }
}

/// Runs the checks selected by `suite`. Loop-dependent checks (σ-invariance,
/// palindromicity, genus, index sum) are skipped when no boundary loop is
/// given; the closed-form comparison is skipped unless the edges are those of
/// some `f_k`.
pub fn verify(map: &GraphMap, boundary: Option<&Word>, suite: Suite) -> VerificationReport {
    let mut report = VerificationReport::default();
    let push = |report: &mut VerificationReport, kind: CheckKind, status: Status, witness: String| {
        if suite.includes(kind) {
            report.checks.push(Check { kind, status, witness });
        }
    };
    let pass_fail = |ok: bool| if ok { Status::Pass } else { Status::Fail };

    let validation = map.validate();
    push(&mut report, CheckKind::Validate, pass_fail(validation.passed()), validation.to_string());
    if !validation.passed() {
        return report;
    }

    let certificate = map.train_track_certificate();
    let legal = matches!(certificate, Ok(TrainTrackCertificate::Legal(_)));
    let witness = match &certificate {
        Ok(TrainTrackCertificate::Legal(orbits)) => format!("{} turns in images, every orbit legal", orbits.len()),
        Ok(TrainTrackCertificate::Illegal(bad)) => bad.to_string(),
        Err(e) => e.to_string(),
    };
    push(&mut report, CheckKind::TrainTrack, pass_fail(legal), witness);

    let m = transition_matrix(map);
    let primitive = m.is_primitive();
    let period = m.matrix().period().map_or("reducible".to_string(), |p| format!("period {p}"));
    push(&mut report, CheckKind::Primitive, pass_fail(primitive), period);

    let det = signed_transition_matrix(map).determinant();
    push(&mut report, CheckKind::Abelianization, pass_fail(det.abs().is_one()), format!("det = {det}"));

    let chi = m.char_poly();
    if suite.includes(CheckKind::CharpolyClosedForm) {
        let edges = map.alphabet().names();
        let k = edges.len().checked_sub(4).filter(|n| n % 4 == 0 && *n > 0).map(|n| n / 4);
        match k.filter(|&k| edges == converging_edge_names(k).as_slice()) {
            Some(k) => {
                let expected = closed_form_charpoly(k).expect("k >= 1");
                push(
                    &mut report,
                    CheckKind::CharpolyClosedForm,
                    pass_fail(chi == expected),
                    format!("k = {k}: {chi}"),
                );
            }
            None => push(&mut report, CheckKind::CharpolyClosedForm, Status::Skip, "edges are not those of f_k".into()),
        }
    }

    let Some(sigma) = boundary else {
        for kind in [CheckKind::SigmaInvariant, CheckKind::Palindromic, CheckKind::Genus, CheckKind::IndexSum] {
            push(&mut report, kind, Status::Skip, "no boundary loop".into());
        }
        return report;
    };

    match verify_sigma_invariance(map, sigma) {
        Ok(w) => {
            let witness = match w.matched {
                Some(mm) => format!("rotation {}, inverted {}", mm.rotation, mm.inverted),
                None => format!("image {}", map.alphabet().render(w.image.letters())),
            };
            push(&mut report, CheckKind::SigmaInvariant, pass_fail(w.invariant()), witness);
        }
        Err(e) => push(&mut report, CheckKind::SigmaInvariant, Status::Fail, e.to_string()),
    }

    push(&mut report, CheckKind::Palindromic, pass_fail(chi.is_palindromic()), chi.to_coefficient_list());

    let carrier = genus_and_puncture(map.graph());
    let genus = carrier.as_ref().ok().and_then(|c| c.genus);
    let witness = match &carrier {
        Ok(c) => match c.genus {
            Some(g) => format!("rank {}, genus {g}", c.rank),
            None => format!("rank {} is odd", c.rank),
        },
        Err(e) => e.to_string(),
    };
    push(&mut report, CheckKind::Genus, pass_fail(genus.is_some()), witness);
    report.genus = carrier.ok();

    if suite.includes(CheckKind::IndexSum) {
        match (legal, genus) {
            (true, Some(g)) => match singularity_indices(map) {
                Ok(table) => {
                    let ok = index_sum_check(&table, g);
                    let witness = format!("sum {} vs 2 - 2*{g}", table.sum());
                    push(&mut report, CheckKind::IndexSum, pass_fail(ok), witness);
                    report.index_table = Some(table);
                }
                Err(e) => push(&mut report, CheckKind::IndexSum, Status::Fail, e.to_string()),
            },
            (false, _) => push(&mut report, CheckKind::IndexSum, Status::Fail, "not a train track map".into()),
            (_, None) => push(&mut report, CheckKind::IndexSum, Status::Fail, "no genus".into()),
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{periodic_family, pv_family};

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn identity_preserves_every_loop() {
        let m = converging_family(1).unwrap();
        let id = GraphMap::identity(m.map.graph().clone());
        let sigma = m.boundary.unwrap().to_word();
        let w = verify_sigma_invariance(&id, &sigma).unwrap();
        assert_eq!(w.matched, Some(CyclicMatch { rotation: 0, inverted: false }));
    }

    #[test]
    fn open_loop_rejected() {
        let m = converging_family(1).unwrap();
        let al = m.alphabet();
        let w = al.parse_word("a x0").unwrap();
        assert_eq!(verify_sigma_invariance(&m.map, &w), Err(AnalysisError::NotClosed));
    }

    #[test]
    fn odd_rank_rose() {
        let al = crate::words::Alphabet::new(["p", "q", "r"]).unwrap();
        let g = Graph::new(al, vec!["v".into()], vec![(crate::graphmap::VertexId(0), crate::graphmap::VertexId(0)); 3]).unwrap();
        assert_eq!(genus_and_puncture(&g).unwrap(), Carrier { rank: 3, genus: None });
    }

    #[test]
    fn prongs_from_polygon_shape() {
        let sides = |v: &[(usize, usize)]| v.iter().copied().collect::<BTreeSet<_>>();
        assert_eq!(prong_count(3, &sides(&[(0, 1), (1, 2), (0, 2)])), 3);
        assert_eq!(prong_count(3, &sides(&[(0, 1), (1, 2)])), 2);
        assert_eq!(prong_count(4, &sides(&[(0, 1), (2, 3)])), 4);
        assert_eq!(prong_count(5, &sides(&[])), 5);
        assert_eq!(prong_count(2, &sides(&[(0, 1)])), 2);
    }

    #[test]
    fn converging_indices() {
        for k in [1usize, 3] {
            let m = converging_family(k).unwrap();
            let table = singularity_indices(&m.map).unwrap();
            let outer = Rational64::new(1, 2) - Rational64::from_integer(k as i64);
            assert_eq!(table.singular().filter(|r| r.index == outer).count(), 4, "{table}");
            let central: Vec<_> = table.regular().collect();
            assert_eq!(central.len(), 1);
            assert_eq!((central[0].gates, central[0].polygon_sides, central[0].prongs), (3, 2, 2));
            assert!(index_sum_check(&table, 2 * k));
        }
    }

    #[test]
    fn empty_table_fails_sum_check() {
        assert!(!index_sum_check(&IndexTable::default(), 1));
    }

    #[test]
    fn identity_indices_follow_valence() {
        let m = converging_family(1).unwrap();
        let id = GraphMap::identity(m.map.graph().clone());
        let table = singularity_indices(&id).unwrap();
        for row in &table.rows {
            assert_eq!(row.gates, row.valence);
            assert_eq!(row.index, Rational64::one() - Rational64::new(row.valence as i64, 2));
        }
    }

    #[test]
    fn growth_at_k1() {
        let rec = growth_record(1, &r(1, 100)).unwrap();
        assert!(rec.enclosure.is_within(&r(201, 100), &r(202, 100)));
        assert!(rec.residual_brackets_root());
        assert!(rec.inverse_bound_ok);
    }

    #[test]
    fn growth_table_rejects_bad_input() {
        assert_eq!(growth_table(&[], &r(1, 10)), Err(AnalysisError::BadRange));
        assert_eq!(growth_table(&[0, 1], &r(1, 10)), Err(AnalysisError::BadRange));
        assert!(growth_table(&[1], &r(0, 1)).is_err());
    }

    #[test]
    fn pv_skips_surface_checks() {
        let m = pv_family(3).unwrap();
        let report = verify(&m.map, None, Suite::All);
        assert!(report.passed(), "{report}");
        assert_eq!(report.status(CheckKind::SigmaInvariant), Some(Status::Skip));
        assert_eq!(report.status(CheckKind::Primitive), Some(Status::Pass));
    }

    #[test]
    fn periodic_map_is_not_primitive() {
        let m = periodic_family(2).unwrap();
        let sigma = m.boundary.unwrap().to_word();
        let report = verify(&m.map, Some(&sigma), Suite::All);
        assert_eq!(report.status(CheckKind::TrainTrack), Some(Status::Pass));
        assert_eq!(report.status(CheckKind::SigmaInvariant), Some(Status::Pass));
        assert_eq!(report.status(CheckKind::Primitive), Some(Status::Fail));
        assert_eq!(report.status(CheckKind::CharpolyClosedForm), Some(Status::Skip));
    }

    #[test]
    fn suites_select_checks() {
        let m = converging_family(2).unwrap();
        let sigma = m.boundary.unwrap().to_word();
        let report = verify(&m.map, Some(&sigma), Suite::Sigma);
        let kinds: Vec<_> = report.checks.iter().map(|c| c.kind).collect();
        assert_eq!(kinds, vec![CheckKind::Validate, CheckKind::SigmaInvariant]);
        assert!(report.passed());
    }
}
