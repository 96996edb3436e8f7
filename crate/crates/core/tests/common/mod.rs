//! Brute-force oracles, generators and fixture helpers shared by the
//! integration tests.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::path::{Path, PathBuf};

use chrono::NaiveDate;
use num_rational::Ratio;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use citenet::corpus::{
    dedup_and_screen, extract_citations, parse_corpus_file, CitationRuleSet, CorpusFormat, JudgmentDoc, ProvisionId,
    ScreeningConfig,
};
use citenet::network::{build_affiliation, AffiliationMatrix, CoCitationNetwork};

pub type Q = Ratio<i64>;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

// ---------------------------------------------------------------- fixtures

pub fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

pub fn fixture_rules() -> CitationRuleSet {
    CitationRuleSet::from_file(&fixture("rules.toml")).expect("fixture rules parse")
}

/// The bundled corpus with citations extracted, before screening.
pub fn fixture_docs() -> Vec<JudgmentDoc> {
    let rules = fixture_rules();
    parse_corpus_file(&fixture("reference_corpus.jsonl"), CorpusFormat::Records)
        .expect("fixture corpus parses")
        .iter()
        .map(|d| extract_citations(d, &rules).expect("fixture docs carry text"))
        .collect()
}

/// The bundled corpus after deduplication and the default screen.
pub fn fixture_screened() -> Vec<JudgmentDoc> {
    let config = ScreeningConfig::from_file(&fixture("screen.toml")).expect("fixture screen parses");
    dedup_and_screen(fixture_docs(), &config).0
}

pub fn fixture_matrix() -> AffiliationMatrix {
    build_affiliation(&fixture_screened()).expect("fixture matrix builds")
}

// ----------------------------------------------------------------- graphs

/// Nodes `N0`, `N1`, ... in index order.
pub fn numbered(n: usize) -> Vec<ProvisionId> {
    (0..n).map(|i| ProvisionId::new(format!("N{i}"), "")).collect()
}

pub fn graph(n: usize, edges: &[(usize, usize)]) -> CoCitationNetwork {
    let mut net = CoCitationNetwork::with_nodes(numbered(n)).unwrap();
    for &(a, b) in edges {
        net.insert_edge(a, b, 1).unwrap();
    }
    net
}

pub fn random_edges(rng: &mut impl Rng, n: usize, p: f64) -> Vec<(usize, usize)> {
    let mut edges = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if rng.gen_bool(p) {
                edges.push((a, b));
            }
        }
    }
    edges
}

pub fn random_weighted(rng: &mut impl Rng, n: usize, p: f64, max_weight: u32) -> CoCitationNetwork {
    let mut net = CoCitationNetwork::with_nodes(numbered(n)).unwrap();
    for (a, b) in random_edges(rng, n, p) {
        net.insert_edge(a, b, rng.gen_range(1..=max_weight)).unwrap();
    }
    net
}

fn neighbours(n: usize, edges: &[(usize, usize)]) -> Vec<BTreeSet<usize>> {
    let mut adj = vec![BTreeSet::new(); n];
    for &(a, b) in edges {
        adj[a].insert(b);
        adj[b].insert(a);
    }
    adj
}

fn bfs(adj: &[BTreeSet<usize>], s: usize) -> Vec<Option<usize>> {
    let mut dist = vec![None; adj.len()];
    dist[s] = Some(0);
    let mut queue = VecDeque::from([s]);
    while let Some(v) = queue.pop_front() {
        for &w in &adj[v] {
            if dist[w].is_none() {
                dist[w] = Some(dist[v].unwrap() + 1);
                queue.push_back(w);
            }
        }
    }
    dist
}

/// Every geodesic from `s` to `t`, listed explicitly.
pub fn all_shortest_paths(adj: &[BTreeSet<usize>], s: usize, t: usize) -> Vec<Vec<usize>> {
    let from_t = bfs(adj, t);
    let Some(len) = from_t[s] else { return Vec::new() };
    let mut paths = Vec::new();
    let mut stack = vec![vec![s]];
    while let Some(path) = stack.pop() {
        let last = *path.last().unwrap();
        if last == t {
            paths.push(path);
            continue;
        }
        let remaining = len - (path.len() - 1);
        for &w in &adj[last] {
            if from_t[w] == Some(remaining - 1) {
                let mut next = path.clone();
                next.push(w);
                stack.push(next);
            }
        }
    }
    paths
}

/// Unnormalized betweenness by enumerating every geodesic of every
/// unordered pair and crediting each interior vertex with 1/σ_st.
pub fn betweenness_oracle(n: usize, edges: &[(usize, usize)]) -> Vec<Q> {
    let adj = neighbours(n, edges);
    let mut score = vec![Q::from_integer(0); n];
    for s in 0..n {
        for t in s + 1..n {
            let paths = all_shortest_paths(&adj, s, t);
            if paths.is_empty() {
                continue;
            }
            let share = Q::new(1, paths.len() as i64);
            for path in &paths {
                for &v in &path[1..path.len() - 1] {
                    score[v] += share;
                }
            }
        }
    }
    score
}

pub fn to_f64(q: Q) -> f64 {
    *q.numer() as f64 / *q.denom() as f64
}

/// Erdős–Gallai test for whether a degree sequence is graphical.
pub fn erdos_gallai(sequence: &[usize]) -> bool {
    let mut d = sequence.to_vec();
    d.sort_unstable_by(|a, b| b.cmp(a));
    if d.iter().sum::<usize>() % 2 == 1 {
        return false;
    }
    let n = d.len();
    (1..=n).all(|k| {
        let lhs: usize = d[..k].iter().sum();
        let rhs = k * (k - 1) + d[k..].iter().map(|&x| x.min(k)).sum::<usize>();
        lhs <= rhs
    })
}

// --------------------------------------------------------------- matrices

/// Random binary matrix with no all-zero row.
pub fn random_rows(rng: &mut impl Rng, rows: usize, cols: usize, p: f64) -> Vec<Vec<bool>> {
    (0..rows)
        .map(|_| {
            let mut row: Vec<bool> = (0..cols).map(|_| rng.gen_bool(p)).collect();
            if !row.contains(&true) {
                row[rng.gen_range(0..cols)] = true;
            }
            row
        })
        .collect()
}

pub fn matrix_from(rows: Vec<Vec<bool>>) -> AffiliationMatrix {
    let cols = rows.first().map_or(0, Vec::len);
    let judgments = (0..cols).map(|j| format!("J{j}")).collect();
    AffiliationMatrix::from_rows(numbered(rows.len()), judgments, rows).unwrap()
}

/// Co-occurrence counts for every row pair with at least one shared column.
pub fn projection_oracle(rows: &[Vec<bool>]) -> BTreeMap<(usize, usize), u32> {
    let mut out = BTreeMap::new();
    for i in 0..rows.len() {
        for j in i + 1..rows.len() {
            let shared = rows[i].iter().zip(&rows[j]).filter(|(a, b)| **a && **b).count() as u32;
            if shared > 0 {
                out.insert((i, j), shared);
            }
        }
    }
    out
}

// ---------------------------------------------------------------- corpora

pub fn date() -> NaiveDate {
    NaiveDate::from_ymd_opt(2023, 6, 1).unwrap()
}

pub fn doc(id: &str, citations: &[&str]) -> JudgmentDoc {
    JudgmentDoc::new(id, date()).with_citations(citations.iter().map(|c| ProvisionId::new(*c, "")))
}

/// `n` documents citing random subsets (possibly empty) of a small pool.
pub fn random_corpus(rng: &mut impl Rng, n: usize, pool: usize) -> Vec<JudgmentDoc> {
    (0..n)
        .map(|i| {
            let cites: Vec<ProvisionId> = (0..pool)
                .filter(|_| rng.gen_bool(0.35))
                .map(|p| ProvisionId::new(format!("P{p}"), ""))
                .collect();
            JudgmentDoc::new(format!("D{i:02}"), date()).with_citations(cites)
        })
        .collect()
}

/// Jaccard similarity as an exact ratio; two empty sets count as identical.
pub fn jaccard_exact(a: &JudgmentDoc, b: &JudgmentDoc) -> Q {
    let inter = a.citations.intersection(&b.citations).count() as i64;
    let union = a.citations.union(&b.citations).count() as i64;
    if union == 0 {
        Q::from_integer(1)
    } else {
        Q::new(inter, union)
    }
}

/// Partition of doc ids obtained by repeatedly merging any two groups that
/// contain a pair with similarity at least `threshold`, until nothing
/// changes.
pub fn clustering_oracle(docs: &[JudgmentDoc], threshold: Q) -> BTreeSet<BTreeSet<String>> {
    let mut groups: Vec<Vec<usize>> = (0..docs.len()).map(|i| vec![i]).collect();
    loop {
        let mut merge = None;
        'search: for g in 0..groups.len() {
            for h in g + 1..groups.len() {
                let linked = groups[g].iter().any(|&a| {
                    groups[h]
                        .iter()
                        .any(|&b| jaccard_exact(&docs[a], &docs[b]) >= threshold)
                });
                if linked {
                    merge = Some((g, h));
                    break 'search;
                }
            }
        }
        match merge {
            Some((g, h)) => {
                let moved = groups.remove(h);
                groups[g].extend(moved);
            }
            None => break,
        }
    }
    groups
        .into_iter()
        .map(|g| g.into_iter().map(|i| docs[i].doc_id.clone()).collect())
        .collect()
}

// ------------------------------------------------------------------ files

/// Every file under `root`, keyed by relative path.
pub fn read_tree(root: &Path) -> BTreeMap<PathBuf, Vec<u8>> {
    fn walk(root: &Path, dir: &Path, out: &mut BTreeMap<PathBuf, Vec<u8>>) {
        for entry in std::fs::read_dir(dir).unwrap() {
            let path = entry.unwrap().path();
            if path.is_dir() {
                walk(root, &path, out);
            } else {
                out.insert(
                    path.strip_prefix(root).unwrap().to_path_buf(),
                    std::fs::read(&path).unwrap(),
                );
            }
        }
    }
    let mut out = BTreeMap::new();
    walk(root, root, &mut out);
    out
}
