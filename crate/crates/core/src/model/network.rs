//! Capacitated vertiport network: nodes, links with travel-time bounds,
//! backup sets, and the fixed set of routes flights may use.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::ModelError;
use crate::time::Time;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct NodeId(pub usize);

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct LinkId(pub usize);

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct RouteId(pub usize);

impl NodeId {
    #[inline]
    pub fn index(self) -> usize {
        self.0
    }
}

impl LinkId {
    #[inline]
    pub fn index(self) -> usize {
        self.0
    }
}

impl RouteId {
    #[inline]
    pub fn index(self) -> usize {
        self.0
    }
}

/// Number of landing spots at a node.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Capacity {
    Finite(u32),
    #[default]
    Unbounded,
}

impl Capacity {
    pub fn finite(self) -> Option<u32> {
        match self {
            Capacity::Finite(c) => Some(c),
            Capacity::Unbounded => None,
        }
    }

    pub fn is_unbounded(self) -> bool {
        matches!(self, Capacity::Unbounded)
    }

    /// Finite capacities grow by `delta`; unbounded stays unbounded.
    pub fn raised_by(self, delta: u32) -> Capacity {
        match self {
            Capacity::Finite(c) => Capacity::Finite(c + delta),
            Capacity::Unbounded => Capacity::Unbounded,
        }
    }
}

impl fmt::Display for Capacity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Capacity::Finite(c) => write!(f, "{c}"),
            Capacity::Unbounded => f.write_str("unbounded"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Node {
    pub name: String,
    pub capacity: Capacity,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Link {
    pub name: String,
    pub tail: NodeId,
    pub head: NodeId,
    pub min_travel: Time,
    pub max_travel: Time,
    /// Sorted by node index; always contains `tail` and `head`.
    pub backups: Vec<NodeId>,
}

impl Link {
    pub fn has_backup(&self, node: NodeId) -> bool {
        self.backups.binary_search(&node).is_ok()
    }
}

/// A connected link sequence from a source to a sink.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Route {
    pub name: String,
    pub links: Vec<LinkId>,
    /// `links.len() + 1` nodes, origin first.
    pub nodes: Vec<NodeId>,
    /// Position of each network node on the route, indexed by node.
    position: Vec<Option<usize>>,
}

impl Route {
    /// Number of links.
    pub fn len(&self) -> usize {
        self.links.len()
    }

    pub fn is_empty(&self) -> bool {
        self.links.is_empty()
    }

    pub fn origin(&self) -> NodeId {
        self.nodes[0]
    }

    pub fn destination(&self) -> NodeId {
        *self.nodes.last().expect("routes have at least one node")
    }

    /// Position of `node` on the route: 0 for the origin, `ℓ` for the head of
    /// the `ℓ`-th link.
    #[inline]
    pub fn position_of(&self, node: NodeId) -> Option<usize> {
        self.position.get(node.index()).copied().flatten()
    }

    pub fn visits(&self, node: NodeId) -> bool {
        self.position_of(node).is_some()
    }

    /// The link at 1-based position `pos`.
    #[inline]
    pub fn link_at(&self, pos: usize) -> LinkId {
        self.links[pos - 1]
    }
}

/// Raw, unvalidated network description. This is both the file format and a
/// small builder for programmatic construction.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NetworkSpec {
    pub w: Time,
    #[serde(default)]
    pub nodes: Vec<NodeSpec>,
    #[serde(default)]
    pub links: Vec<LinkSpec>,
    #[serde(default)]
    pub routes: Vec<RouteSpec>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NodeSpec {
    pub id: String,
    #[serde(default, with = "capacity_serde")]
    pub capacity: Capacity,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LinkSpec {
    pub id: String,
    pub tail: String,
    pub head: String,
    pub tmin: Time,
    pub tmax: Time,
    pub backups: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RouteSpec {
    pub id: String,
    pub links: Vec<String>,
}

mod capacity_serde {
    use super::Capacity;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    #[derive(Serialize, Deserialize)]
    #[serde(untagged)]
    enum Repr {
        Count(u32),
        Word(String),
    }

    pub fn serialize<S: Serializer>(c: &Capacity, s: S) -> Result<S::Ok, S::Error> {
        match c {
            Capacity::Finite(n) => Repr::Count(*n).serialize(s),
            Capacity::Unbounded => Repr::Word("unbounded".into()).serialize(s),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Capacity, D::Error> {
        match Repr::deserialize(d)? {
            Repr::Count(n) => Ok(Capacity::Finite(n)),
            Repr::Word(w) if w == "unbounded" => Ok(Capacity::Unbounded),
            Repr::Word(w) => Err(serde::de::Error::custom(format!(
                "capacity must be a non-negative integer or \"unbounded\", got {w:?}"
            ))),
        }
    }
}

impl Serialize for Capacity {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        capacity_serde::serialize(self, s)
    }
}

impl NetworkSpec {
    pub fn new(w: Time) -> Self {
        NetworkSpec {
            w,
            ..Default::default()
        }
    }

    pub fn node(mut self, id: &str, capacity: Capacity) -> Self {
        self.nodes.push(NodeSpec {
            id: id.to_string(),
            capacity,
        });
        self
    }

    pub fn link(mut self, id: &str, tail: &str, head: &str, tmin: Time, tmax: Time, backups: &[&str]) -> Self {
        self.links.push(LinkSpec {
            id: id.to_string(),
            tail: tail.to_string(),
            head: head.to_string(),
            tmin,
            tmax,
            backups: backups.iter().map(|s| s.to_string()).collect(),
        });
        self
    }

    pub fn route(mut self, id: &str, links: &[&str]) -> Self {
        self.routes.push(RouteSpec {
            id: id.to_string(),
            links: links.iter().map(|s| s.to_string()).collect(),
        });
        self
    }

    pub fn build(&self) -> Result<Network, ModelError> {
        Network::from_spec(self)
    }
}

/// A validated network. Immutable after construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Network {
    nodes: Vec<Node>,
    links: Vec<Link>,
    routes: Vec<Route>,
    w: Time,
    is_source: Vec<bool>,
    is_sink: Vec<bool>,
    /// Links by head node.
    inbound: Vec<Vec<LinkId>>,
    node_index: HashMap<String, NodeId>,
    link_index: HashMap<String, LinkId>,
    route_index: HashMap<String, RouteId>,
}

fn invalid(reason: impl Into<String>) -> ModelError {
    ModelError::InvalidNetwork(reason.into())
}

impl Network {
    pub fn from_spec(spec: &NetworkSpec) -> Result<Network, ModelError> {
        if spec.w < Time::ZERO {
            return Err(invalid("ground service time must be non-negative"));
        }

        let mut node_index = HashMap::new();
        let mut nodes = Vec::with_capacity(spec.nodes.len());
        for (i, n) in spec.nodes.iter().enumerate() {
            if node_index.insert(n.id.clone(), NodeId(i)).is_some() {
                return Err(invalid(format!("duplicate node id `{}`", n.id)));
            }
            nodes.push(Node {
                name: n.id.clone(),
                capacity: n.capacity,
            });
        }
        let lookup_node = |name: &str, ctx: &str| {
            node_index
                .get(name)
                .copied()
                .ok_or_else(|| invalid(format!("{ctx}: unknown node `{name}`")))
        };

        let mut link_index = HashMap::new();
        let mut links = Vec::with_capacity(spec.links.len());
        let mut inbound = vec![Vec::new(); nodes.len()];
        let mut is_source = vec![true; nodes.len()];
        let mut is_sink = vec![true; nodes.len()];
        for (i, l) in spec.links.iter().enumerate() {
            let ctx = format!("link `{}`", l.id);
            if link_index.insert(l.id.clone(), LinkId(i)).is_some() {
                return Err(invalid(format!("duplicate link id `{}`", l.id)));
            }
            let tail = lookup_node(&l.tail, &ctx)?;
            let head = lookup_node(&l.head, &ctx)?;
            if tail == head {
                return Err(invalid(format!("{ctx}: tail and head coincide")));
            }
            if l.tmin <= Time::ZERO {
                return Err(invalid(format!("{ctx}: minimum travel time must be positive")));
            }
            if l.tmin > l.tmax {
                return Err(invalid(format!(
                    "{ctx}: minimum travel time {} exceeds maximum {}",
                    l.tmin, l.tmax
                )));
            }
            let mut backups = l
                .backups
                .iter()
                .map(|b| lookup_node(b, &ctx))
                .collect::<Result<Vec<_>, _>>()?;
            backups.sort_unstable();
            backups.dedup();
            if backups.binary_search(&tail).is_err() {
                return Err(invalid(format!("{ctx}: backup set must contain tail `{}`", l.tail)));
            }
            if backups.binary_search(&head).is_err() {
                return Err(invalid(format!("{ctx}: backup set must contain head `{}`", l.head)));
            }
            inbound[head.index()].push(LinkId(i));
            is_source[head.index()] = false;
            is_sink[tail.index()] = false;
            links.push(Link {
                name: l.id.clone(),
                tail,
                head,
                min_travel: l.tmin,
                max_travel: l.tmax,
                backups,
            });
        }

        if let Some(v) = (0..nodes.len()).find(|&v| is_source[v] && is_sink[v]) {
            return Err(invalid(format!(
                "node `{}` is both a source and a sink (sources and sinks must be disjoint)",
                nodes[v].name
            )));
        }

        let mut route_index = HashMap::new();
        let mut routes = Vec::with_capacity(spec.routes.len());
        for (i, r) in spec.routes.iter().enumerate() {
            let ctx = format!("route `{}`", r.id);
            if route_index.insert(r.id.clone(), RouteId(i)).is_some() {
                return Err(invalid(format!("duplicate route id `{}`", r.id)));
            }
            if r.links.is_empty() {
                return Err(invalid(format!("{ctx}: a route needs at least one link")));
            }
            let route_links = r
                .links
                .iter()
                .map(|name| {
                    link_index
                        .get(name)
                        .copied()
                        .ok_or_else(|| invalid(format!("{ctx}: unknown link `{name}`")))
                })
                .collect::<Result<Vec<_>, _>>()?;
            let mut route_nodes = vec![links[route_links[0].index()].tail];
            for (k, &e) in route_links.iter().enumerate() {
                let link = &links[e.index()];
                if link.tail != *route_nodes.last().unwrap() {
                    return Err(invalid(format!(
                        "{ctx}: link `{}` does not start where link `{}` ends",
                        link.name,
                        r.links[k - 1]
                    )));
                }
                route_nodes.push(link.head);
            }
            let mut position = vec![None; nodes.len()];
            for (pos, &v) in route_nodes.iter().enumerate() {
                if position[v.index()].replace(pos).is_some() {
                    return Err(invalid(format!(
                        "{ctx}: visits node `{}` more than once",
                        nodes[v.index()].name
                    )));
                }
            }
            let origin = route_nodes[0];
            let dest = *route_nodes.last().unwrap();
            if !is_source[origin.index()] {
                return Err(invalid(format!(
                    "{ctx}: origin `{}` is not a source node",
                    nodes[origin.index()].name
                )));
            }
            if !is_sink[dest.index()] {
                return Err(invalid(format!(
                    "{ctx}: destination `{}` is not a sink node",
                    nodes[dest.index()].name
                )));
            }
            routes.push(Route {
                name: r.id.clone(),
                links: route_links,
                nodes: route_nodes,
                position,
            });
        }

        Ok(Network {
            nodes,
            links,
            routes,
            w: spec.w,
            is_source,
            is_sink,
            inbound,
            node_index,
            link_index,
            route_index,
        })
    }

    /// Canonical description; `Network::from_spec(&net.to_spec())` rebuilds `net`.
    pub fn to_spec(&self) -> NetworkSpec {
        NetworkSpec {
            w: self.w,
            nodes: self
                .nodes
                .iter()
                .map(|n| NodeSpec {
                    id: n.name.clone(),
                    capacity: n.capacity,
                })
                .collect(),
            links: self
                .links
                .iter()
                .map(|l| LinkSpec {
                    id: l.name.clone(),
                    tail: self.node(l.tail).name.clone(),
                    head: self.node(l.head).name.clone(),
                    tmin: l.min_travel,
                    tmax: l.max_travel,
                    backups: l.backups.iter().map(|&b| self.node(b).name.clone()).collect(),
                })
                .collect(),
            routes: self
                .routes
                .iter()
                .map(|r| RouteSpec {
                    id: r.name.clone(),
                    links: r.links.iter().map(|&e| self.link(e).name.clone()).collect(),
                })
                .collect(),
        }
    }

    /// Ground service time.
    pub fn service_time(&self) -> Time {
        self.w
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn links(&self) -> &[Link] {
        &self.links
    }

    pub fn routes(&self) -> &[Route] {
        &self.routes
    }

    pub fn node_ids(&self) -> impl Iterator<Item = NodeId> + '_ {
        (0..self.nodes.len()).map(NodeId)
    }

    pub fn link_ids(&self) -> impl Iterator<Item = LinkId> + '_ {
        (0..self.links.len()).map(LinkId)
    }

    #[inline]
    pub fn node(&self, id: NodeId) -> &Node {
        &self.nodes[id.index()]
    }

    #[inline]
    pub fn link(&self, id: LinkId) -> &Link {
        &self.links[id.index()]
    }

    #[inline]
    pub fn route(&self, id: RouteId) -> &Route {
        &self.routes[id.index()]
    }

    pub fn capacity(&self, id: NodeId) -> Capacity {
        self.nodes[id.index()].capacity
    }

    pub fn is_source(&self, id: NodeId) -> bool {
        self.is_source[id.index()]
    }

    pub fn is_sink(&self, id: NodeId) -> bool {
        self.is_sink[id.index()]
    }

    /// Links whose head is `node`.
    pub fn inbound(&self, node: NodeId) -> &[LinkId] {
        &self.inbound[node.index()]
    }

    pub fn node_by_name(&self, name: &str) -> Option<NodeId> {
        self.node_index.get(name).copied()
    }

    pub fn link_by_name(&self, name: &str) -> Option<LinkId> {
        self.link_index.get(name).copied()
    }

    pub fn route_by_name(&self, name: &str) -> Option<RouteId> {
        self.route_index.get(name).copied()
    }

    /// Copy with one node's capacity replaced.
    pub fn with_capacity(&self, node: NodeId, capacity: Capacity) -> Network {
        let mut net = self.clone();
        net.nodes[node.index()].capacity = capacity;
        net
    }

    /// Copy with every finite capacity raised by `delta`.
    pub fn with_raised_capacities(&self, delta: u32) -> Network {
        let mut net = self.clone();
        for n in &mut net.nodes {
            n.capacity = n.capacity.raised_by(delta);
        }
        net
    }
}
