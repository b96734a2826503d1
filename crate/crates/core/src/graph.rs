//! Finite directed graphs, paths and the special-edge selection.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexId(pub u32);

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EdgeId(pub u32);

impl VertexId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl EdgeId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// A name in the shared vertex/edge namespace.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum Symbol {
    Vertex(VertexId),
    Edge(EdgeId),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub name: String,
    pub source: VertexId,
    pub range: VertexId,
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("duplicate name `{0}`")]
    DuplicateName(String),
    #[error("edge `{edge}` refers to unknown vertex `{vertex}`")]
    DanglingEndpoint { edge: String, vertex: String },
    #[error("invalid name `{0}`")]
    InvalidName(String),
    #[error("unknown name `{0}`")]
    UnknownName(String),
    #[error("`{edge}` cannot be special at `{vertex}`: its source is `{source_vertex}`")]
    SpecialSourceMismatch {
        vertex: String,
        edge: String,
        source_vertex: String,
    },
    #[error("no special edge selected at non-sink vertex `{0}`")]
    MissingSpecial(String),
    #[error("sink `{0}` cannot carry a special edge")]
    SpecialAtSink(String),
    #[error("edges {0} do not form a path")]
    NotAPath(String),
    #[error("a path needs at least one edge")]
    EmptyPath,
}

/// A finite directed multigraph whose vertices and edges share one namespace.
#[derive(Clone, Debug)]
pub struct Graph {
    vertices: Vec<String>,
    edges: Vec<Edge>,
    names: HashMap<String, Symbol>,
    out_edges: Vec<Vec<EdgeId>>,
}

fn valid_name(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '\'')
}

impl Graph {
    /// Builds a graph from vertex names and `(edge, source, range)` triples.
    pub fn build<V, E, S>(vertex_names: V, edge_triples: E) -> Result<Graph, GraphError>
    where
        V: IntoIterator,
        V::Item: Into<String>,
        E: IntoIterator<Item = (S, S, S)>,
        S: Into<String>,
    {
        let mut names = HashMap::new();
        let mut vertices = Vec::new();
        for name in vertex_names {
            let name = name.into();
            if !valid_name(&name) {
                return Err(GraphError::InvalidName(name));
            }
            let id = VertexId(vertices.len() as u32);
            if names.insert(name.clone(), Symbol::Vertex(id)).is_some() {
                return Err(GraphError::DuplicateName(name));
            }
            vertices.push(name);
        }
        let mut edges = Vec::new();
        let mut out_edges = vec![Vec::new(); vertices.len()];
        for (name, src, dst) in edge_triples {
            let (name, src, dst) = (name.into(), src.into(), dst.into());
            if !valid_name(&name) {
                return Err(GraphError::InvalidName(name));
            }
            let endpoint = |v: &str| match names.get(v) {
                Some(Symbol::Vertex(id)) => Ok(*id),
                _ => Err(GraphError::DanglingEndpoint {
                    edge: name.clone(),
                    vertex: v.to_string(),
                }),
            };
            let source = endpoint(&src)?;
            let range = endpoint(&dst)?;
            let id = EdgeId(edges.len() as u32);
            if names.insert(name.clone(), Symbol::Edge(id)).is_some() {
                return Err(GraphError::DuplicateName(name));
            }
            out_edges[source.index()].push(id);
            edges.push(Edge {
                name,
                source,
                range,
            });
        }
        Ok(Graph {
            vertices,
            edges,
            names,
            out_edges,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        (0..self.vertices.len() as u32).map(VertexId)
    }

    pub fn edges(&self) -> impl Iterator<Item = EdgeId> + '_ {
        (0..self.edges.len() as u32).map(EdgeId)
    }

    pub fn vertex_name(&self, v: VertexId) -> &str {
        &self.vertices[v.index()]
    }

    pub fn edge_name(&self, e: EdgeId) -> &str {
        &self.edges[e.index()].name
    }

    pub fn edge(&self, e: EdgeId) -> &Edge {
        &self.edges[e.index()]
    }

    pub fn source(&self, e: EdgeId) -> VertexId {
        self.edges[e.index()].source
    }

    pub fn range(&self, e: EdgeId) -> VertexId {
        self.edges[e.index()].range
    }

    /// Edges leaving `v`, in declaration order.
    pub fn out_edges(&self, v: VertexId) -> &[EdgeId] {
        &self.out_edges[v.index()]
    }

    pub fn lookup(&self, name: &str) -> Option<Symbol> {
        self.names.get(name).copied()
    }

    pub fn vertex_by_name(&self, name: &str) -> Result<VertexId, GraphError> {
        match self.lookup(name) {
            Some(Symbol::Vertex(v)) => Ok(v),
            _ => Err(GraphError::UnknownName(name.to_string())),
        }
    }

    pub fn edge_by_name(&self, name: &str) -> Result<EdgeId, GraphError> {
        match self.lookup(name) {
            Some(Symbol::Edge(e)) => Ok(e),
            _ => Err(GraphError::UnknownName(name.to_string())),
        }
    }

    pub fn is_sink(&self, v: VertexId) -> bool {
        self.out_edges[v.index()].is_empty()
    }

    /// Vertices without outgoing edges.
    pub fn sinks(&self) -> Vec<VertexId> {
        self.vertices().filter(|&v| self.is_sink(v)).collect()
    }

    pub fn composable(&self, e: EdgeId, f: EdgeId) -> bool {
        self.range(e) == self.source(f)
    }

    /// All paths of length `1..=maxlen`, ordered by length and then by the
    /// sequence of edge names.
    pub fn enumerate_paths(&self, maxlen: usize) -> Vec<Path> {
        let mut all: Vec<Vec<EdgeId>> = Vec::new();
        let mut frontier: Vec<Vec<EdgeId>> = self.edges().map(|e| vec![e]).collect();
        for _ in 0..maxlen {
            if frontier.is_empty() {
                break;
            }
            let mut next = Vec::new();
            for p in &frontier {
                let last = *p.last().unwrap();
                for &f in self.out_edges(self.range(last)) {
                    let mut q = p.clone();
                    q.push(f);
                    next.push(q);
                }
            }
            all.append(&mut frontier);
            frontier = next;
        }
        all.sort_by(|p, q| {
            p.len().cmp(&q.len()).then_with(|| {
                let pn = p.iter().map(|&e| self.edge_name(e));
                let qn = q.iter().map(|&e| self.edge_name(e));
                pn.cmp(qn)
            })
        });
        all.into_iter().map(Path).collect()
    }

    /// Renders an edge sequence as space-separated names.
    pub fn spell(&self, edges: &[EdgeId]) -> String {
        edges
            .iter()
            .map(|&e| self.edge_name(e))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// The choice of one special out-edge at every non-sink vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpecialSelection {
    assignment: Vec<Option<EdgeId>>,
    special: Vec<bool>,
}

impl SpecialSelection {
    /// Picks the lexicographically least edge name at every non-sink.
    pub fn default_for(g: &Graph) -> SpecialSelection {
        let assignment = g
            .vertices()
            .map(|v| {
                g.out_edges(v)
                    .iter()
                    .copied()
                    .min_by(|&a, &b| g.edge_name(a).cmp(g.edge_name(b)))
            })
            .collect();
        Self::from_assignment(g, assignment)
    }

    /// Starts from [`SpecialSelection::default_for`] and applies explicit overrides.
    pub fn with_overrides<I>(g: &Graph, overrides: I) -> Result<SpecialSelection, GraphError>
    where
        I: IntoIterator<Item = (VertexId, EdgeId)>,
    {
        let mut assignment = Self::default_for(g).assignment;
        for (v, e) in overrides {
            if g.is_sink(v) {
                return Err(GraphError::SpecialAtSink(g.vertex_name(v).to_string()));
            }
            if g.source(e) != v {
                return Err(GraphError::SpecialSourceMismatch {
                    vertex: g.vertex_name(v).to_string(),
                    edge: g.edge_name(e).to_string(),
                    source_vertex: g.vertex_name(g.source(e)).to_string(),
                });
            }
            assignment[v.index()] = Some(e);
        }
        let sel = Self::from_assignment(g, assignment);
        sel.validate(g)?;
        Ok(sel)
    }

    /// Same as [`SpecialSelection::with_overrides`] but resolves names.
    pub fn with_named_overrides(
        g: &Graph,
        overrides: &[(&str, &str)],
    ) -> Result<SpecialSelection, GraphError> {
        let resolved = overrides
            .iter()
            .map(|(v, e)| Ok((g.vertex_by_name(v)?, g.edge_by_name(e)?)))
            .collect::<Result<Vec<_>, GraphError>>()?;
        Self::with_overrides(g, resolved)
    }

    fn from_assignment(g: &Graph, assignment: Vec<Option<EdgeId>>) -> SpecialSelection {
        let mut special = vec![false; g.edge_count()];
        for e in assignment.iter().flatten() {
            special[e.index()] = true;
        }
        SpecialSelection {
            assignment,
            special,
        }
    }

    /// Checks `s(θ(v)) = v` and that the domain is exactly the non-sinks.
    pub fn validate(&self, g: &Graph) -> Result<(), GraphError> {
        for v in g.vertices() {
            match self.assignment.get(v.index()).copied().flatten() {
                None if !g.is_sink(v) => {
                    return Err(GraphError::MissingSpecial(g.vertex_name(v).to_string()))
                }
                Some(_) if g.is_sink(v) => {
                    return Err(GraphError::SpecialAtSink(g.vertex_name(v).to_string()))
                }
                Some(e) if g.source(e) != v => {
                    return Err(GraphError::SpecialSourceMismatch {
                        vertex: g.vertex_name(v).to_string(),
                        edge: g.edge_name(e).to_string(),
                        source_vertex: g.vertex_name(g.source(e)).to_string(),
                    })
                }
                _ => {}
            }
        }
        Ok(())
    }

    pub fn get(&self, v: VertexId) -> Option<EdgeId> {
        self.assignment[v.index()]
    }

    pub fn is_special(&self, e: EdgeId) -> bool {
        self.special[e.index()]
    }

    /// `(vertex, special edge)` pairs over the non-sinks.
    pub fn pairs(&self) -> impl Iterator<Item = (VertexId, EdgeId)> + '_ {
        self.assignment
            .iter()
            .enumerate()
            .filter_map(|(i, e)| e.map(|e| (VertexId(i as u32), e)))
    }
}

/// A nonempty sequence of composable edges.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path(Vec<EdgeId>);

impl Path {
    pub fn new(g: &Graph, edges: Vec<EdgeId>) -> Result<Path, GraphError> {
        if edges.is_empty() {
            return Err(GraphError::EmptyPath);
        }
        if edges.windows(2).any(|w| !g.composable(w[0], w[1])) {
            return Err(GraphError::NotAPath(g.spell(&edges)));
        }
        Ok(Path(edges))
    }

    /// Resolves whitespace-separated edge names.
    pub fn parse(g: &Graph, spelled: &str) -> Result<Path, GraphError> {
        let edges = spelled
            .split_whitespace()
            .map(|n| g.edge_by_name(n))
            .collect::<Result<Vec<_>, _>>()?;
        Path::new(g, edges)
    }

    pub fn edges(&self) -> &[EdgeId] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn first(&self) -> EdgeId {
        self.0[0]
    }

    pub fn last(&self) -> EdgeId {
        *self.0.last().unwrap()
    }

    pub fn source(&self, g: &Graph) -> VertexId {
        g.source(self.first())
    }

    pub fn range(&self, g: &Graph) -> VertexId {
        g.range(self.last())
    }

    pub fn is_cycle(&self, g: &Graph) -> bool {
        self.source(g) == self.range(g)
    }

    /// Cyclic shift by one edge: `c₀c₁…c_ℓ ↦ c₁…c_ℓc₀`.
    pub fn rotate(&self) -> Path {
        let mut edges = self.0.clone();
        edges.rotate_left(1);
        Path(edges)
    }

    pub fn into_walk(self, g: &Graph) -> Walk {
        let start = self.source(g);
        Walk {
            start,
            edges: self.0,
        }
    }
}

/// A path or a single vertex (the empty path at that vertex).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Walk {
    start: VertexId,
    edges: Vec<EdgeId>,
}

impl Walk {
    pub fn vertex(v: VertexId) -> Walk {
        Walk {
            start: v,
            edges: Vec::new(),
        }
    }

    pub fn edge(g: &Graph, e: EdgeId) -> Walk {
        Walk {
            start: g.source(e),
            edges: vec![e],
        }
    }

    /// Builds a walk from a composable edge sequence; `None` if not composable.
    pub fn from_edges(g: &Graph, edges: &[EdgeId]) -> Option<Walk> {
        let start = g.source(*edges.first()?);
        if edges.windows(2).any(|w| !g.composable(w[0], w[1])) {
            return None;
        }
        Some(Walk {
            start,
            edges: edges.to_vec(),
        })
    }

    pub fn start(&self) -> VertexId {
        self.start
    }

    pub fn end(&self, g: &Graph) -> VertexId {
        match self.edges.last() {
            Some(&e) => g.range(e),
            None => self.start,
        }
    }

    pub fn edges(&self) -> &[EdgeId] {
        &self.edges
    }

    /// Number of edges; a vertex walk has length zero but is not empty.
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_vertex(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn first(&self) -> Option<EdgeId> {
        self.edges.first().copied()
    }

    pub fn last(&self) -> Option<EdgeId> {
        self.edges.last().copied()
    }

    /// `p/p₀`: drops the first edge; a single edge leaves its range vertex.
    pub fn drop_first(&self, g: &Graph) -> Option<Walk> {
        let first = self.first()?;
        Some(Walk {
            start: g.range(first),
            edges: self.edges[1..].to_vec(),
        })
    }

    /// `p∖p_z`: drops the last edge; a single edge leaves its source vertex.
    pub fn drop_last(&self, _g: &Graph) -> Option<Walk> {
        self.last()?;
        Some(Walk {
            start: self.start,
            edges: self.edges[..self.edges.len() - 1].to_vec(),
        })
    }

    /// Concatenation, `None` when the endpoints do not meet.
    pub fn concat(&self, g: &Graph, other: &Walk) -> Option<Walk> {
        if self.end(g) != other.start {
            return None;
        }
        let mut edges = self.edges.clone();
        edges.extend_from_slice(&other.edges);
        Some(Walk {
            start: self.start,
            edges,
        })
    }

    pub fn push_front(&self, g: &Graph, e: EdgeId) -> Option<Walk> {
        Walk::edge(g, e).concat(g, self)
    }

    pub fn push_back(&self, g: &Graph, e: EdgeId) -> Option<Walk> {
        self.concat(g, &Walk::edge(g, e))
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v#{}", self.0)
    }
}
