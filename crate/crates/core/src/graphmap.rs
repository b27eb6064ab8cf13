//! Finite graphs, graph self-maps and the train track machinery on them.
//!
//! Directions are oriented edges, based at the vertex they leave. The
//! derivative map `D` sends a direction to the first direction of its image
//! path; a map is a train track map when no turn crossed by an edge image ever
//! degenerates under iterates of `D`.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use petgraph::unionfind::UnionFind;
use thiserror::Error;

use crate::words::{apply_morphism, Alphabet, EdgeId, Letter, Path, Word, WordError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error(transparent)]
    Word(#[from] WordError),
    #[error("a graph needs at least one edge")]
    NoEdges,
    #[error("edge `{edge}` refers to vertex #{vertex}, but there are only {count} vertices")]
    UnknownVertex { edge: String, vertex: usize, count: usize },
    #[error("expected {expected} edge images, got {got}")]
    ImageCount { expected: usize, got: usize },
    #[error("graph map fails validation: {0}")]
    Invalid(ValidationReport),
    #[error("map is not a train track map: {0}")]
    NotTrainTrack(IllegalTurn),
    #[error("turn orbit did not close up within {0} steps")]
    IterationCap(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(pub usize);

/// Germ of an oriented edge at the vertex it leaves.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Direction(pub Letter);

impl Direction {
    /// Dense index in `0..2·|edges|`.
    pub fn index(self) -> usize {
        2 * self.0.edge.0 + usize::from(self.0.inverted)
    }

    pub fn from_index(i: usize) -> Self {
        Direction(Letter { edge: EdgeId(i / 2), inverted: i % 2 == 1 })
    }
}

/// Unordered pair of directions at a common vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Turn(Direction, Direction);

impl Turn {
    pub fn new(a: Direction, b: Direction) -> Self {
        if a <= b {
            Turn(a, b)
        } else {
            Turn(b, a)
        }
    }

    /// The turn crossed between consecutive letters `first` and `second` of a path.
    pub fn between(first: Letter, second: Letter) -> Self {
        Turn::new(Direction(first.inverse()), Direction(second))
    }

    pub fn directions(self) -> (Direction, Direction) {
        (self.0, self.1)
    }

    pub fn is_degenerate(self) -> bool {
        self.0 == self.1
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    alphabet: Alphabet,
    vertex_names: Vec<String>,
    incidence: Vec<(VertexId, VertexId)>,
}

impl Graph {
    pub fn new(
        alphabet: Alphabet,
        vertex_names: Vec<String>,
        incidence: Vec<(VertexId, VertexId)>,
    ) -> Result<Self, GraphError> {
        if alphabet.is_empty() {
            return Err(GraphError::NoEdges);
        }
        if incidence.len() != alphabet.len() {
            return Err(GraphError::ImageCount { expected: alphabet.len(), got: incidence.len() });
        }
        let count = vertex_names.len();
        for (e, &(s, t)) in incidence.iter().enumerate() {
            for v in [s, t] {
                if v.0 >= count {
                    return Err(GraphError::UnknownVertex {
                        edge: alphabet.name(EdgeId(e)).to_string(),
                        vertex: v.0,
                        count,
                    });
                }
            }
        }
        Ok(Graph { alphabet, vertex_names, incidence })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn edge_count(&self) -> usize {
        self.alphabet.len()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_names.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> {
        (0..self.vertex_names.len()).map(VertexId)
    }

    pub fn vertex_name(&self, v: VertexId) -> &str {
        &self.vertex_names[v.0]
    }

    pub fn endpoints(&self, e: EdgeId) -> (VertexId, VertexId) {
        self.incidence[e.0]
    }

    /// Vertex a letter starts from.
    pub fn start(&self, l: Letter) -> VertexId {
        let (s, t) = self.incidence[l.edge.0];
        if l.inverted {
            t
        } else {
            s
        }
    }

    pub fn end(&self, l: Letter) -> VertexId {
        self.start(l.inverse())
    }

    pub fn direction_count(&self) -> usize {
        2 * self.edge_count()
    }

    pub fn directions(&self) -> impl Iterator<Item = Direction> {
        (0..self.direction_count()).map(Direction::from_index)
    }

    pub fn directions_at(&self, v: VertexId) -> Vec<Direction> {
        self.directions().filter(|d| self.start(d.0) == v).collect()
    }

    /// Number of directions at `v`; a loop edge counts twice.
    pub fn valence(&self, v: VertexId) -> usize {
        self.directions().filter(|d| self.start(d.0) == v).count()
    }

    pub fn is_connected(&self) -> bool {
        let mut uf = UnionFind::<usize>::new(self.vertex_count());
        for &(s, t) in &self.incidence {
            uf.union(s.0, t.0);
        }
        self.vertices().all(|v| uf.equiv(v.0, 0))
    }

    /// Rank of the fundamental group, `E − V + 1` (for connected graphs).
    pub fn rank(&self) -> isize {
        self.edge_count() as isize - self.vertex_count() as isize + 1
    }

    /// `Some((start, end))` when consecutive letters meet, else the first break position.
    pub fn path_endpoints(&self, path: &[Letter]) -> Result<Option<(VertexId, VertexId)>, usize> {
        for (i, w) in path.windows(2).enumerate() {
            if self.end(w[0]) != self.start(w[1]) {
                return Err(i);
            }
        }
        Ok(path.first().map(|f| (self.start(*f), self.end(*path.last().unwrap()))))
    }
}

/// A word that must be a continuous edge path, and a closed one if `closed`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathConstraint {
    pub letters: Vec<Letter>,
    pub closed: bool,
}

impl PathConstraint {
    pub fn open(letters: &[Letter]) -> Self {
        PathConstraint { letters: letters.to_vec(), closed: false }
    }

    pub fn closed(letters: &[Letter]) -> Self {
        PathConstraint { letters: letters.to_vec(), closed: true }
    }
}

/// Builds the graph whose vertices are the classes of edge endpoints under the
/// finest identification that makes every constraint a continuous path.
///
/// Endpoint `2e` is the initial vertex of edge `e`, `2e + 1` its terminal one.
/// Vertices are numbered by first appearance in that order.
pub fn infer_graph(alphabet: &Alphabet, constraints: &[PathConstraint]) -> Result<Graph, GraphError> {
    let uf = unify_endpoints(alphabet, constraints)?;
    Ok(graph_from_classes(alphabet, uf))
}

/// Like [`infer_graph`] for the images and closed loops of a map, and
/// additionally coarsened until the map sends vertices to vertices: two
/// identified endpoints must have identified images.
pub fn infer_map_graph(
    alphabet: &Alphabet,
    images: &[Word],
    loops: &[Word],
) -> Result<Graph, GraphError> {
    if images.len() != alphabet.len() {
        return Err(GraphError::ImageCount { expected: alphabet.len(), got: images.len() });
    }
    let constraints: Vec<PathConstraint> = images
        .iter()
        .map(|w| PathConstraint::open(w))
        .chain(loops.iter().map(|w| PathConstraint::closed(w)))
        .collect();
    let mut uf = unify_endpoints(alphabet, &constraints)?;
    // image slot of every endpoint slot, where the edge image is nonempty
    let image_slot: Vec<Option<usize>> = (0..2 * alphabet.len())
        .map(|slot| {
            let image = &images[slot / 2];
            if slot % 2 == 0 {
                image.first().map(|&l| slot_start(l))
            } else {
                image.last().map(|&l| slot_end(l))
            }
        })
        .collect();
    loop {
        let mut changed = false;
        let mut representative: HashMap<usize, usize> = HashMap::new();
        for (slot, target) in image_slot.iter().enumerate() {
            let Some(target) = *target else { continue };
            let root = uf.find(slot);
            match representative.get(&root) {
                Some(&other) => changed |= uf.union(other, target),
                None => {
                    representative.insert(root, target);
                }
            }
        }
        if !changed {
            break;
        }
    }
    Ok(graph_from_classes(alphabet, uf))
}

fn slot_start(l: Letter) -> usize {
    2 * l.edge.0 + usize::from(l.inverted)
}

fn slot_end(l: Letter) -> usize {
    2 * l.edge.0 + usize::from(!l.inverted)
}

fn unify_endpoints(
    alphabet: &Alphabet,
    constraints: &[PathConstraint],
) -> Result<UnionFind<usize>, GraphError> {
    if alphabet.is_empty() {
        return Err(GraphError::NoEdges);
    }
    let mut uf = UnionFind::<usize>::new(2 * alphabet.len());
    for c in constraints {
        if let Some(bad) = c.letters.iter().find(|l| !alphabet.contains(**l)) {
            return Err(WordError::AlphabetMismatch { edge: bad.edge.0, size: alphabet.len() }.into());
        }
        for w in c.letters.windows(2) {
            uf.union(slot_end(w[0]), slot_start(w[1]));
        }
        if c.closed {
            if let (Some(&first), Some(&last)) = (c.letters.first(), c.letters.last()) {
                uf.union(slot_end(last), slot_start(first));
            }
        }
    }
    Ok(uf)
}

fn graph_from_classes(alphabet: &Alphabet, mut uf: UnionFind<usize>) -> Graph {
    let mut numbering: HashMap<usize, VertexId> = HashMap::new();
    let mut vertex_of_slot = Vec::with_capacity(2 * alphabet.len());
    for slot in 0..2 * alphabet.len() {
        let root = uf.find_mut(slot);
        let next = VertexId(numbering.len());
        vertex_of_slot.push(*numbering.entry(root).or_insert(next));
    }
    let incidence = (0..alphabet.len())
        .map(|e| (vertex_of_slot[2 * e], vertex_of_slot[2 * e + 1]))
        .collect();
    let names = (0..numbering.len()).map(|i| format!("v{i}")).collect();
    Graph::new(alphabet.clone(), names, incidence).expect("endpoint classes are valid vertices")
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ValidationFailure {
    EmptyImage { edge: String },
    /// Letters `position` and `position + 1` of the image do not meet.
    Discontinuous { edge: String, position: usize },
    /// The induced vertex map is not well defined at this vertex.
    VertexImageConflict { vertex: String },
    LowValence { vertex: String, valence: usize },
    Disconnected,
}

impl fmt::Display for ValidationFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ValidationFailure::EmptyImage { edge } => write!(f, "nonempty image: `{edge}` maps to the empty word"),
            ValidationFailure::Discontinuous { edge, position } => {
                write!(f, "path compatibility: image of `{edge}` breaks after letter {position}")
            }
            ValidationFailure::VertexImageConflict { vertex } => {
                write!(f, "vertex images: `{vertex}` has inconsistent images")
            }
            ValidationFailure::LowValence { vertex, valence } => {
                write!(f, "valence: `{vertex}` has valence {valence} < 3")
            }
            ValidationFailure::Disconnected => write!(f, "connectivity: graph is disconnected"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ValidationReport {
    pub failures: Vec<ValidationFailure>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.failures.is_empty() {
            return f.write_str("all checks pass");
        }
        let parts: Vec<String> = self.failures.iter().map(|x| x.to_string()).collect();
        f.write_str(&parts.join("; "))
    }
}

/// A self-map of a graph given by edge-path images. Vertex images are derived
/// from the edge images.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphMap {
    graph: Graph,
    images: Vec<Path>,
}

impl GraphMap {
    pub fn new(graph: Graph, images: Vec<Path>) -> Result<Self, GraphError> {
        if images.len() != graph.edge_count() {
            return Err(GraphError::ImageCount { expected: graph.edge_count(), got: images.len() });
        }
        let alphabet = graph.alphabet();
        for image in &images {
            if let Some(bad) = image.iter().find(|l| !alphabet.contains(**l)) {
                return Err(WordError::AlphabetMismatch { edge: bad.edge.0, size: alphabet.len() }.into());
            }
        }
        Ok(GraphMap { graph, images })
    }

    pub fn from_words(graph: Graph, images: Vec<Word>) -> Result<Self, GraphError> {
        GraphMap::new(graph, images.into_iter().map(Path::from).collect())
    }

    pub fn identity(graph: Graph) -> Self {
        let images = graph.alphabet().edges().map(|e| Path(vec![Letter::forward(e)])).collect();
        GraphMap { graph, images }
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn alphabet(&self) -> &Alphabet {
        self.graph.alphabet()
    }

    pub fn image(&self, e: EdgeId) -> &Path {
        &self.images[e.0]
    }

    pub fn images(&self) -> &[Path] {
        &self.images
    }

    /// Reduced images, for free-group computations.
    pub fn word_images(&self) -> Vec<Word> {
        self.images.iter().map(Path::tighten).collect()
    }

    /// Reduced image of an arbitrary word.
    pub fn apply(&self, w: &[Letter]) -> Result<Word, WordError> {
        apply_morphism(self.alphabet(), &self.word_images(), w)
    }

    /// Image of each vertex, read off the edge endpoints. `None` where the
    /// image is undetermined or contradictory.
    pub fn vertex_images(&self) -> Vec<Option<VertexId>> {
        self.vertex_assignment()
            .into_iter()
            .map(|a| match a {
                VertexImage::Set(v) => Some(v),
                _ => None,
            })
            .collect()
    }

    fn vertex_assignment(&self) -> Vec<VertexImage> {
        let mut out = vec![VertexImage::Unset; self.graph.vertex_count()];
        for e in self.alphabet().edges() {
            let image = &self.images[e.0];
            let (Some(&first), Some(&last)) = (image.first(), image.last()) else { continue };
            let (s, t) = self.graph.endpoints(e);
            for (v, target) in [(s, self.graph.start(first)), (t, self.graph.end(last))] {
                out[v.0] = match out[v.0] {
                    VertexImage::Unset => VertexImage::Set(target),
                    VertexImage::Set(prev) if prev == target => VertexImage::Set(prev),
                    _ => VertexImage::Conflict,
                };
            }
        }
        out
    }

    pub fn validate(&self) -> ValidationReport {
        let mut failures = Vec::new();
        let name = |e: EdgeId| self.alphabet().name(e).to_string();
        for e in self.alphabet().edges() {
            let image = &self.images[e.0];
            if image.is_empty() {
                failures.push(ValidationFailure::EmptyImage { edge: name(e) });
                continue;
            }
            if let Err(position) = self.graph.path_endpoints(image) {
                failures.push(ValidationFailure::Discontinuous { edge: name(e), position });
            }
        }
        for (v, a) in self.vertex_assignment().into_iter().enumerate() {
            if a == VertexImage::Conflict {
                failures.push(ValidationFailure::VertexImageConflict {
                    vertex: self.graph.vertex_name(VertexId(v)).to_string(),
                });
            }
        }
        for v in self.graph.vertices() {
            let valence = self.graph.valence(v);
            if valence < 3 {
                failures.push(ValidationFailure::LowValence {
                    vertex: self.graph.vertex_name(v).to_string(),
                    valence,
                });
            }
        }
        if !self.graph.is_connected() {
            failures.push(ValidationFailure::Disconnected);
        }
        ValidationReport { failures }
    }

    fn require_valid(&self) -> Result<(), GraphError> {
        let report = self.validate();
        if report.passed() {
            Ok(())
        } else {
            Err(GraphError::Invalid(report))
        }
    }

    pub fn derivative_map(&self) -> Result<DerivativeMap, GraphError> {
        self.require_valid()?;
        let table = self
            .graph
            .directions()
            .map(|d| {
                let image = &self.images[d.0.edge.0];
                if d.0.inverted {
                    Direction(image.last().expect("validated nonempty").inverse())
                } else {
                    Direction(*image.first().expect("validated nonempty"))
                }
            })
            .collect();
        Ok(DerivativeMap { table })
    }

    /// Decides whether every iterate of the map is an immersion on edges.
    pub fn train_track_certificate(&self) -> Result<TrainTrackCertificate, GraphError> {
        let derivative = self.derivative_map()?;
        let cap = 2 * self.graph.direction_count().pow(2);
        let mut taken: Vec<(EdgeId, Turn)> = Vec::new();
        for e in self.alphabet().edges() {
            for w in self.images[e.0].windows(2) {
                taken.push((e, Turn::between(w[0], w[1])));
            }
        }
        let mut orbits: HashMap<Turn, TurnOrbit> = HashMap::new();
        for &(edge, turn) in &taken {
            if orbits.contains_key(&turn) {
                continue;
            }
            let mut seen: HashMap<Turn, usize> = HashMap::new();
            let mut current = turn;
            let mut step = 0usize;
            loop {
                if current.is_degenerate() {
                    return Ok(TrainTrackCertificate::Illegal(IllegalTurn {
                        edge: self.alphabet().name(edge).to_string(),
                        iterate: step + 1,
                        turn,
                        degenerate: current.0,
                    }));
                }
                if let Some(&first) = seen.get(&current) {
                    orbits.insert(turn, TurnOrbit { turn, preperiod: first, period: step - first });
                    break;
                }
                seen.insert(current, step);
                step += 1;
                if step > cap {
                    return Err(GraphError::IterationCap(cap));
                }
                current = derivative.apply_turn(current);
            }
        }
        let mut orbits: Vec<TurnOrbit> = orbits.into_values().collect();
        orbits.sort_by_key(|o| o.turn);
        Ok(TrainTrackCertificate::Legal(orbits))
    }

    /// Every turn crossed by some iterate `f^n(e)`: the forward `D`-orbits of
    /// the turns inside single images. Sorted, without repeats.
    pub fn taken_turns(&self) -> Result<Vec<Turn>, GraphError> {
        let derivative = self.derivative_map()?;
        let mut taken = BTreeSet::new();
        let mut stack: Vec<Turn> = self
            .images
            .iter()
            .flat_map(|img| img.windows(2).map(|w| Turn::between(w[0], w[1])))
            .collect();
        while let Some(t) = stack.pop() {
            if taken.insert(t) {
                stack.push(derivative.apply_turn(t));
            }
        }
        Ok(taken.into_iter().collect())
    }

    pub fn is_train_track(&self) -> Result<bool, GraphError> {
        Ok(self.train_track_certificate()?.is_legal())
    }

    /// Partition of the directions at `v` into gates.
    pub fn gates(&self, v: VertexId) -> Result<Vec<Vec<Direction>>, GraphError> {
        if let TrainTrackCertificate::Illegal(bad) = self.train_track_certificate()? {
            return Err(GraphError::NotTrainTrack(bad));
        }
        let derivative = self.derivative_map()?;
        Ok(derivative.gates_at(&self.graph, v))
    }

    /// The `n`-th iterate with tightened images; `n = 0` gives the identity.
    pub fn iterate(&self, n: usize) -> Result<GraphMap, GraphError> {
        if n == 0 {
            return Ok(GraphMap::identity(self.graph.clone()));
        }
        self.require_valid()?;
        let base = self.word_images();
        let mut current = base.clone();
        for _ in 1..n {
            current = current
                .iter()
                .map(|w| apply_morphism(self.alphabet(), &base, w))
                .collect::<Result<_, _>>()?;
        }
        GraphMap::from_words(self.graph.clone(), current)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum VertexImage {
    Unset,
    Set(VertexId),
    Conflict,
}

/// `D` tabulated over direction indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DerivativeMap {
    table: Vec<Direction>,
}

impl DerivativeMap {
    pub fn apply(&self, d: Direction) -> Direction {
        self.table[d.index()]
    }

    pub fn apply_turn(&self, t: Turn) -> Turn {
        Turn::new(self.apply(t.0), self.apply(t.1))
    }

    pub fn power(&self, d: Direction, n: usize) -> Direction {
        (0..n).fold(d, |acc, _| self.apply(acc))
    }

    pub fn len(&self) -> usize {
        self.table.len()
    }

    pub fn is_empty(&self) -> bool {
        self.table.is_empty()
    }

    /// Directions `d1`, `d2` share a gate iff `D^n d1 = D^n d2` for some `n`.
    /// On a set of size `s`, that happens for some `n` iff it happens at `n = s`,
    /// because `D` is injective on the periodic directions reached by then.
    pub fn gates_at(&self, graph: &Graph, v: VertexId) -> Vec<Vec<Direction>> {
        let depth = self.table.len();
        let mut by_limit: Vec<(Direction, Vec<Direction>)> = Vec::new();
        for d in graph.directions_at(v) {
            let limit = self.power(d, depth);
            match by_limit.iter_mut().find(|(l, _)| *l == limit) {
                Some((_, gate)) => gate.push(d),
                None => by_limit.push((limit, vec![d])),
            }
        }
        by_limit.into_iter().map(|(_, gate)| gate).collect()
    }
}

/// Where a taken turn first degenerates: it lies in the image of `edge` and
/// `turn` collapses to `degenerate` inside the image of `edge` under the
/// `iterate`-th power of the map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IllegalTurn {
    pub edge: String,
    pub iterate: usize,
    pub turn: Turn,
    pub degenerate: Direction,
}

impl fmt::Display for IllegalTurn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "image of `{}` backtracks under iterate {}", self.edge, self.iterate)
    }
}

/// Eventual behaviour of a legal taken turn under `D`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TurnOrbit {
    pub turn: Turn,
    pub preperiod: usize,
    pub period: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TrainTrackCertificate {
    Legal(Vec<TurnOrbit>),
    Illegal(IllegalTurn),
}

impl TrainTrackCertificate {
    pub fn is_legal(&self) -> bool {
        matches!(self, TrainTrackCertificate::Legal(_))
    }
}
