//! Relevance-network construction from ranked MI pairs: keep the K largest
//! scores as undirected edges, then report degrees, hubs and connected
//! components.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::mi::MiPairList;

/// Undirected weighted edge; `a < b` lexicographically.
#[derive(Debug, Clone, PartialEq)]
pub struct Edge {
    pub a: String,
    pub b: String,
    pub mi: f64,
}

/// Undirected relevance network. Nodes are only the genes incident to a
/// retained edge. Edges are stored sorted by weight descending, then by
/// names, and carry no self-loops or duplicates.
#[derive(Debug, Clone)]
pub struct Network {
    pub nodes: Vec<String>,
    pub edges: Vec<Edge>,
    pub k_requested: usize,
}

impl Network {
    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    fn node_index(&self) -> HashMap<&str, usize> {
        self.nodes
            .iter()
            .enumerate()
            .map(|(i, n)| (n.as_str(), i))
            .collect()
    }

    /// Symmetric 0/1 adjacency matrix over `nodes` order.
    pub fn adjacency(&self) -> Vec<Vec<u8>> {
        let idx = self.node_index();
        let n = self.nodes.len();
        let mut adj = vec![vec![0u8; n]; n];
        for e in &self.edges {
            let (a, b) = (idx[e.a.as_str()], idx[e.b.as_str()]);
            adj[a][b] = 1;
            adj[b][a] = 1;
        }
        adj
    }

    fn neighbor_lists(&self) -> Vec<Vec<usize>> {
        let idx = self.node_index();
        let mut nbr = vec![Vec::new(); self.nodes.len()];
        for e in &self.edges {
            let (a, b) = (idx[e.a.as_str()], idx[e.b.as_str()]);
            nbr[a].push(b);
            nbr[b].push(a);
        }
        nbr
    }

    /// Degree of every node, in `nodes` order.
    pub fn degrees(&self) -> Vec<usize> {
        self.neighbor_lists().iter().map(Vec::len).collect()
    }
}

/// Degrees, top hubs and connected components of one network.
#[derive(Debug, Clone)]
pub struct DegreeReport {
    /// (gene, degree) in gene-name order.
    pub degrees: Vec<(String, usize)>,
    /// Top-H nodes by degree, ties broken lexicographically; degrees are
    /// non-increasing in report order.
    pub hubs: Vec<(String, usize)>,
    /// Component sizes, largest first.
    pub component_sizes: Vec<usize>,
}

impl DegreeReport {
    pub fn component_count(&self) -> usize {
        self.component_sizes.len()
    }

    pub fn degree_sum(&self) -> usize {
        self.degrees.iter().map(|(_, d)| d).sum()
    }
}

fn edges_from_entries(
    entries: &[crate::mi::MiPair],
    gene_ids: &[String],
    k_requested: usize,
) -> Network {
    let mut incident: Vec<&str> = Vec::new();
    let mut edges: Vec<Edge> = Vec::with_capacity(entries.len());
    for e in entries {
        let (gi, gj) = (&gene_ids[e.i as usize], &gene_ids[e.j as usize]);
        let (a, b) = if gi <= gj { (gi, gj) } else { (gj, gi) };
        edges.push(Edge {
            a: a.clone(),
            b: b.clone(),
            mi: e.mi,
        });
        incident.push(gi);
        incident.push(gj);
    }
    incident.sort_unstable();
    incident.dedup();
    edges.sort_by(|x, y| {
        y.mi.total_cmp(&x.mi)
            .then_with(|| x.a.cmp(&y.a))
            .then_with(|| x.b.cmp(&y.b))
    });
    Network {
        nodes: incident.into_iter().map(str::to_string).collect(),
        edges,
        k_requested,
    }
}

/// Build the network of the `k` highest-MI pairs.
///
/// Exactly min(k, |pairs|) edges are retained; the pair list's total order
/// (MI descending, then ascending index pair) decides ties at the cutoff, so
/// every retained weight is >= every excluded weight.
pub fn build_top_k(pairs: &MiPairList, gene_ids: &[String], k: usize) -> Result<Network> {
    if k < 1 {
        return Err(Error::Domain("k must be at least 1".into()));
    }
    if pairs.is_empty() {
        return Err(Error::Empty(
            "no scored pairs to build a network from".into(),
        ));
    }
    if gene_ids.len() < pairs.n_profiles {
        return Err(Error::Dimension(format!(
            "pair list spans {} profiles but only {} gene ids given",
            pairs.n_profiles,
            gene_ids.len()
        )));
    }
    let take = k.min(pairs.len());
    Ok(edges_from_entries(&pairs.entries[..take], gene_ids, k))
}

/// Build the network of all pairs with MI at or above `min_mi`. Convenience
/// companion to [`build_top_k`] with the same deterministic ordering.
pub fn build_min_weight(pairs: &MiPairList, gene_ids: &[String], min_mi: f64) -> Result<Network> {
    if pairs.is_empty() {
        return Err(Error::Empty(
            "no scored pairs to build a network from".into(),
        ));
    }
    if gene_ids.len() < pairs.n_profiles {
        return Err(Error::Dimension(format!(
            "pair list spans {} profiles but only {} gene ids given",
            pairs.n_profiles,
            gene_ids.len()
        )));
    }
    let take = pairs.entries.partition_point(|e| e.mi >= min_mi);
    if take == 0 {
        return Err(Error::Empty(format!(
            "no pair reaches the MI threshold {min_mi}"
        )));
    }
    Ok(edges_from_entries(&pairs.entries[..take], gene_ids, take))
}

/// Degrees, top-`hub_count` hubs and connected components.
pub fn degree_report(net: &Network, hub_count: usize) -> DegreeReport {
    let nbr = net.neighbor_lists();

    let mut degrees: Vec<(String, usize)> = net
        .nodes
        .iter()
        .zip(&nbr)
        .map(|(n, adj)| (n.clone(), adj.len()))
        .collect();
    degrees.sort_by(|a, b| a.0.cmp(&b.0));

    let mut hubs = degrees.clone();
    hubs.sort_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
    hubs.truncate(hub_count);

    // Components by breadth-first traversal.
    let n = net.nodes.len();
    let mut seen = vec![false; n];
    let mut component_sizes = Vec::new();
    let mut queue = std::collections::VecDeque::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        queue.push_back(start);
        let mut size = 0usize;
        while let Some(v) = queue.pop_front() {
            size += 1;
            for &w in &nbr[v] {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        component_sizes.push(size);
    }
    component_sizes.sort_unstable_by(|a, b| b.cmp(a));

    DegreeReport {
        degrees,
        hubs,
        component_sizes,
    }
}

/// One entry of a K sweep.
#[derive(Debug, Clone)]
pub struct SweepEntry {
    pub k: usize,
    pub network: Network,
    pub report: DegreeReport,
}

/// Build one network per requested K, independently.
///
/// Because every network is a prefix of the same sorted pair list, node
/// counts and per-gene degrees are non-decreasing in K; that containment is
/// checked in debug builds.
pub fn network_sweep(
    pairs: &MiPairList,
    gene_ids: &[String],
    ks: &[usize],
    hub_count: usize,
) -> Result<Vec<SweepEntry>> {
    if ks.is_empty() {
        return Err(Error::Domain("at least one K is required".into()));
    }
    let mut out = Vec::with_capacity(ks.len());
    for &k in ks {
        let network = build_top_k(pairs, gene_ids, k)?;
        let report = degree_report(&network, hub_count);
        out.push(SweepEntry { k, network, report });
    }
    debug_assert!({
        let mut sorted: Vec<&SweepEntry> = out.iter().collect();
        sorted.sort_by_key(|e| e.k);
        sorted.windows(2).all(|w| {
            w[0].network.node_count() <= w[1].network.node_count()
                && w[0].network.edge_count() <= w[1].network.edge_count()
        })
    });
    Ok(out)
}
