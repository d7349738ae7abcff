//! ℤ-gradings of simple Lie algebras defined by weighted Dynkin diagrams: the
//! pieces `d_p`, the Levi factor, the irreducible components of `d_1`, ASCII
//! rendering, and the list of regular commutative parabolic spaces.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::roots::{CartanType, Root, RootSystem, RootSystemError};

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum GradingError {
    #[error(transparent)]
    RootSystem(#[from] RootSystemError),
    #[error("commutativity is only defined for a single circled root, got {0}")]
    NotMaximalParabolic(usize),
}

/// A Dynkin diagram with a set of circled simple roots (0-based indices).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightedDiagram {
    pub root_system: RootSystem,
    pub circled: BTreeSet<usize>,
}

impl WeightedDiagram {
    pub fn new(root_system: RootSystem, circled: impl IntoIterator<Item = usize>) -> Result<Self, GradingError> {
        let rank = root_system.rank();
        let circled: BTreeSet<usize> = circled.into_iter().collect();
        if let Some(&bad) = circled.iter().find(|&&i| i >= rank) {
            return Err(RootSystemError::IndexOutOfRange { index: bad, rank }.into());
        }
        Ok(WeightedDiagram { root_system, circled })
    }

    /// Builds a diagram from 1-based circled indices, as they are written
    /// on diagrams.
    pub fn from_labels(ty: CartanType, rank: usize, circled: &[usize]) -> Result<Self, GradingError> {
        let rs = RootSystem::new(ty, rank)?;
        if let Some(&bad) = circled.iter().find(|&&i| i == 0 || i > rank) {
            return Err(RootSystemError::IndexOutOfRange { index: bad, rank }.into());
        }
        WeightedDiagram::new(rs, circled.iter().map(|i| i - 1))
    }

    pub fn is_circled(&self, i: usize) -> bool {
        self.circled.contains(&i)
    }

    /// Label such as `C7{1,7}` with 1-based circled indices.
    pub fn label(&self) -> String {
        let c: Vec<String> = self.circled.iter().map(|i| (i + 1).to_string()).collect();
        format!("{}{{{}}}", self.root_system.name(), c.join(","))
    }

    /// Degree of a root: the sum of its coefficients over circled roots.
    pub fn degree(&self, root: &[i64]) -> i64 {
        self.circled.iter().map(|&i| root[i]).sum()
    }
}

/// A simple factor of the derived Levi subalgebra.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LeviComponent {
    pub ty: CartanType,
    pub rank: usize,
    /// Global simple-root indices, ascending.
    pub nodes: Vec<usize>,
}

impl LeviComponent {
    pub fn name(&self) -> String {
        format!("{}{}", self.ty, self.rank)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LeviType {
    pub components: Vec<LeviComponent>,
    pub center_dim: usize,
}

impl LeviType {
    /// Component names in a canonical form (low-rank coincidences such as
    /// `D3 = A3` and `C2 = B2` resolved), sorted.
    pub fn canonical(&self) -> Vec<String> {
        let mut names: Vec<String> = self.components.iter().flat_map(|c| canonical_name(c.ty, c.rank)).collect();
        names.sort();
        names
    }
}

impl fmt::Display for LeviType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self.components.iter().map(LeviComponent::name).collect();
        if self.center_dim > 0 {
            parts.push(if self.center_dim == 1 {
                "C".to_string()
            } else {
                format!("C^{}", self.center_dim)
            });
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" x "))
        }
    }
}

/// Canonical names of a simple (or `D2`-type) factor.
pub fn canonical_name(ty: CartanType, rank: usize) -> Vec<String> {
    match (ty, rank) {
        (CartanType::B | CartanType::C, 1) => vec!["A1".into()],
        (CartanType::C, 2) => vec!["B2".into()],
        (CartanType::D, 2) => vec!["A1".into(), "A1".into()],
        (CartanType::D, 3) => vec!["A3".into()],
        _ => vec![format!("{}{}", ty, rank)],
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IrreducibleComponent {
    /// Global index of the circled root.
    pub circled_root: usize,
    /// `(global index of β, c)` for each uncircled β joined to the circled
    /// root, `c = −α(H_β)`.
    pub highest_weight: Vec<(usize, i64)>,
    pub dimension: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ParabolicGrading {
    pub diagram: WeightedDiagram,
    /// Value of each simple root on `H_θ`.
    pub h_theta: Vec<i64>,
    /// Roots of each nonzero-dimensional piece `d_p`.
    pub pieces: BTreeMap<i64, Vec<Root>>,
    pub levi: LeviType,
}

impl ParabolicGrading {
    pub fn dim(&self, p: i64) -> usize {
        let roots = self.pieces.get(&p).map_or(0, Vec::len);
        if p == 0 {
            roots + self.diagram.root_system.rank()
        } else {
            roots
        }
    }

    pub fn total_dim(&self) -> usize {
        self.pieces.keys().map(|&p| self.dim(p)).sum::<usize>()
            + if self.pieces.contains_key(&0) { 0 } else { self.diagram.root_system.rank() }
    }

    pub fn max_degree(&self) -> i64 {
        self.pieces.keys().copied().max().unwrap_or(0)
    }
}

pub fn compute_grading(diagram: &WeightedDiagram) -> ParabolicGrading {
    let rs = &diagram.root_system;
    let h_theta: Vec<i64> = (0..rs.rank()).map(|i| if diagram.is_circled(i) { 2 } else { 0 }).collect();
    let mut pieces: BTreeMap<i64, Vec<Root>> = BTreeMap::new();
    for root in rs.roots() {
        let p = diagram.degree(&root);
        pieces.entry(p).or_default().push(root);
    }
    ParabolicGrading {
        diagram: diagram.clone(),
        h_theta,
        pieces,
        levi: levi_type(diagram),
    }
}

/// Simple factors of the Levi: connected components of the uncircled roots.
pub fn levi_type(diagram: &WeightedDiagram) -> LeviType {
    let rs = &diagram.root_system;
    let n = rs.rank();
    let mut seen = vec![false; n];
    let mut components = Vec::new();
    for start in 0..n {
        if seen[start] || diagram.is_circled(start) {
            continue;
        }
        let mut nodes = vec![];
        let mut stack = vec![start];
        seen[start] = true;
        while let Some(i) = stack.pop() {
            nodes.push(i);
            for j in 0..n {
                if !seen[j] && !diagram.is_circled(j) && rs.connected(i, j) {
                    seen[j] = true;
                    stack.push(j);
                }
            }
        }
        nodes.sort_unstable();
        let (ty, rank) = classify_subdiagram(rs, &nodes);
        components.push(LeviComponent { ty, rank, nodes });
    }
    LeviType {
        components,
        center_dim: diagram.circled.len(),
    }
}

/// Type of the connected subdiagram on `nodes`.
pub fn classify_subdiagram(rs: &RootSystem, nodes: &[usize]) -> (CartanType, usize) {
    let k = nodes.len();
    let neighbours = |i: usize| -> Vec<usize> { nodes.iter().copied().filter(|&j| rs.connected(i, j)).collect() };
    let mut multi: Option<(usize, usize, i64)> = None;
    for (a, &i) in nodes.iter().enumerate() {
        for &j in &nodes[a + 1..] {
            let m = rs.edge_multiplicity(i, j);
            if m > 1 {
                multi = Some((i, j, m));
            }
        }
    }
    if let Some((i, j, m)) = multi {
        if m == 3 {
            return (CartanType::G, 2);
        }
        if k == 2 {
            return (CartanType::B, 2);
        }
        let end_i = neighbours(i).len() == 1;
        let end_j = neighbours(j).len() == 1;
        if !end_i && !end_j {
            return (CartanType::F, 4);
        }
        let lengths = rs.squared_lengths();
        let (end, other) = if end_i { (i, j) } else { (j, i) };
        return if lengths[end] < lengths[other] {
            (CartanType::B, k)
        } else {
            (CartanType::C, k)
        };
    }
    let Some(&branch) = nodes.iter().find(|&&i| neighbours(i).len() == 3) else {
        return (CartanType::A, k);
    };
    let mut arms: Vec<usize> = neighbours(branch)
        .into_iter()
        .map(|first| {
            let (mut prev, mut cur, mut len) = (branch, first, 1);
            loop {
                let next: Vec<usize> = neighbours(cur).into_iter().filter(|&x| x != prev).collect();
                match next.first() {
                    Some(&nx) => {
                        prev = cur;
                        cur = nx;
                        len += 1;
                    }
                    None => break len,
                }
            }
        })
        .collect();
    arms.sort_unstable();
    if arms[0] == 1 && arms[1] == 1 {
        (CartanType::D, k)
    } else {
        (CartanType::E, k)
    }
}

/// `α(H_β)` for adjacent simple roots read off the diagram alone: −1 when
/// `‖α‖ ≤ ‖β‖`, otherwise minus the number of edges joining them.
pub fn rule_r(rs: &RootSystem, alpha: usize, beta: usize) -> i64 {
    let lengths = rs.squared_lengths();
    if lengths[alpha] <= lengths[beta] {
        -1
    } else {
        -rs.edge_multiplicity(alpha, beta)
    }
}

/// Requires exactly one circled root; true iff its coefficient in the highest
/// root is 1.
pub fn is_commutative_parabolic(grading: &ParabolicGrading) -> Result<bool, GradingError> {
    let circled = &grading.diagram.circled;
    if circled.len() != 1 {
        return Err(GradingError::NotMaximalParabolic(circled.len()));
    }
    let i = *circled.iter().next().expect("one circled root");
    Ok(grading.diagram.root_system.highest_root()[i] == 1)
}

/// One component per circled root, with its highest weight and dimension.
pub fn irreducible_components(grading: &ParabolicGrading) -> Vec<IrreducibleComponent> {
    let diagram = &grading.diagram;
    let rs = &diagram.root_system;
    diagram
        .circled
        .iter()
        .map(|&alpha| {
            let highest_weight = (0..rs.rank())
                .filter(|&b| !diagram.is_circled(b) && rs.connected(alpha, b))
                .map(|b| (b, -rs.pairing(&rs.simple_root(alpha), b)))
                .collect();
            let dimension = rs
                .positive_roots()
                .iter()
                .filter(|r| diagram.circled.iter().all(|&c| r[c] == i64::from(c == alpha)))
                .count();
            IrreducibleComponent {
                circled_root: alpha,
                highest_weight,
                dimension,
            }
        })
        .collect()
}

/// Writes a highest weight as `c·ω_k` terms on the Levi components, with `k`
/// the position of `β` inside its component (components numbered in
/// increasing simple-root order).
pub fn describe_weight(levi: &LeviType, weight: &[(usize, i64)]) -> String {
    if weight.is_empty() {
        return "trivial".to_string();
    }
    let terms: Vec<String> = weight
        .iter()
        .map(|&(b, c)| {
            let comp = levi.components.iter().find(|comp| comp.nodes.contains(&b)).expect("β lies in the Levi");
            let k = comp.nodes.iter().position(|&x| x == b).expect("node present") + 1;
            let coeff = if c == 1 { String::new() } else { c.to_string() };
            format!("{coeff}w{k}[{}]", comp.name())
        })
        .collect();
    terms.join(" + ")
}

fn edge_token(rs: &RootSystem, left: usize, right: usize) -> &'static str {
    let m = rs.edge_multiplicity(left, right);
    if m <= 1 {
        return "---";
    }
    let lengths = rs.squared_lengths();
    let points_right = lengths[right] < lengths[left];
    match (m, points_right) {
        (2, true) => "=>=",
        (2, false) => "=<=",
        (_, true) => "#>#",
        (_, false) => "#<#",
    }
}

/// ASCII picture of the diagram. Circled roots are drawn `(o)`, others `o`;
/// double and triple edges carry an arrow pointing to the shorter root. For
/// D and E the root off the main line is drawn below its neighbour.
pub fn render_diagram(diagram: &WeightedDiagram) -> String {
    let rs = &diagram.root_system;
    let n = rs.rank();
    let (main, hanging): (Vec<usize>, Option<(usize, usize)>) = match rs.cartan_type() {
        CartanType::D => ((0..n - 1).collect(), Some((n - 1, n - 3))),
        CartanType::E => ((0..n).filter(|&i| i != 1).collect(), Some((1, 3))),
        _ => ((0..n).collect(), None),
    };
    let token = |i: usize| if diagram.is_circled(i) { "(o)" } else { "o" };
    let mut line = String::new();
    let mut centre = vec![0usize; n];
    for (k, &i) in main.iter().enumerate() {
        if k > 0 {
            line.push_str(edge_token(rs, main[k - 1], i));
        }
        centre[i] = line.len() + usize::from(diagram.is_circled(i));
        line.push_str(token(i));
    }
    let Some((node, attach)) = hanging else {
        return line;
    };
    let col = centre[attach];
    let bar = format!("{}|", " ".repeat(col));
    let below = if diagram.is_circled(node) {
        format!("{}(o)", " ".repeat(col - 1))
    } else {
        format!("{}o", " ".repeat(col))
    };
    format!("{line}\n{bar}\n{below}")
}

/// Component of `d_1` as reported to users, circled root 1-based.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComponentSummary {
    pub circled: usize,
    pub highest_weight: String,
    pub dimension: usize,
}

/// Everything shown for a weighted diagram: picture, Levi type, graded
/// dimensions and the components of `d_1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DiagramSummary {
    pub label: String,
    pub picture: String,
    pub levi: String,
    pub center_dim: usize,
    /// `(p, dim d_p)` for each positive degree.
    pub graded_dims: Vec<(i64, usize)>,
    pub components: Vec<ComponentSummary>,
    /// Only defined for a single circled root.
    pub commutative_parabolic: Option<bool>,
}

pub fn summarize_diagram(diagram: &WeightedDiagram) -> DiagramSummary {
    let grading = compute_grading(diagram);
    let components = irreducible_components(&grading)
        .iter()
        .map(|c| ComponentSummary {
            circled: c.circled_root + 1,
            highest_weight: describe_weight(&grading.levi, &c.highest_weight),
            dimension: c.dimension,
        })
        .collect();
    DiagramSummary {
        label: diagram.label(),
        picture: render_diagram(diagram),
        levi: grading.levi.to_string(),
        center_dim: grading.levi.center_dim,
        graded_dims: (1..=grading.max_degree()).map(|p| (p, grading.dim(p))).collect(),
        components,
        commutative_parabolic: is_commutative_parabolic(&grading).ok(),
    }
}

impl DiagramSummary {
    pub fn to_text(&self) -> String {
        let mut out = format!("{}\n{}\n\nLevi: {}\n", self.label, self.picture, self.levi);
        let dims: Vec<String> = self.graded_dims.iter().map(|(p, d)| format!("d{p}={d}")).collect();
        out.push_str(&format!("graded dims: {}\n", dims.join(" ")));
        for c in &self.components {
            out.push_str(&format!("component at {}: {} (dim {})\n", c.circled, c.highest_weight, c.dimension));
        }
        let commutative = match self.commutative_parabolic {
            Some(true) => "yes",
            Some(false) => "no",
            None => "-",
        };
        out.push_str(&format!("commutative parabolic: {commutative}\n"));
        out
    }
}

/// One row of the list of regular spaces of commutative parabolic type.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Table1Check {
    pub row: String,
    pub diagram: String,
    pub commutative: bool,
    pub levi_expected: Vec<String>,
    pub levi_observed: Vec<String>,
    pub center_dim: usize,
    pub d1_expected: usize,
    pub d1_observed: usize,
    pub passed: bool,
    pub note: Option<String>,
}

struct Table1Row {
    row: &'static str,
    /// `(type, rank, circled label, Levi factors, dim d_1)` for parameter n.
    instance: fn(usize) -> (CartanType, usize, usize, Vec<(CartanType, usize)>, usize),
    params: std::ops::RangeInclusive<usize>,
    note: Option<&'static str>,
}

fn table1_rows() -> Vec<Table1Row> {
    use CartanType::*;
    vec![
        Table1Row {
            row: "A_{2n+1}",
            instance: |n| (A, 2 * n + 1, n + 1, vec![(A, n), (A, n)], (n + 1) * (n + 1)),
            params: 1..=3,
            note: Some("listed space M_n does not match the grading; checked against M_{n+1}, dimension (n+1)^2"),
        },
        Table1Row {
            row: "B_n",
            instance: |n| (B, n, 1, vec![(B, n - 1)], 2 * n - 1),
            params: 3..=8,
            note: None,
        },
        Table1Row {
            row: "C_n",
            instance: |n| (C, n, n, vec![(A, n - 1)], n * (n + 1) / 2),
            params: 2..=8,
            note: None,
        },
        Table1Row {
            row: "D_n^1",
            instance: |n| (D, n, 1, vec![(D, n - 1)], 2 * n - 2),
            params: 4..=8,
            note: None,
        },
        Table1Row {
            row: "D_2n^2",
            instance: |n| (D, 2 * n, 2 * n, vec![(A, 2 * n - 1)], n * (2 * n - 1)),
            params: 2..=4,
            note: None,
        },
        Table1Row {
            row: "E_7",
            instance: |_| (E, 7, 7, vec![(E, 6)], 27),
            params: 0..=0,
            note: None,
        },
    ]
}

/// Checks each row of the list of regular commutative parabolic spaces over
/// all of its instances of rank at most 8.
pub fn verify_table1() -> Vec<Table1Check> {
    let mut out = Vec::new();
    for row in table1_rows() {
        for n in row.params.clone() {
            let (ty, rank, circled, levi, d1) = (row.instance)(n);
            let diagram = WeightedDiagram::from_labels(ty, rank, &[circled]).expect("table rows are valid diagrams");
            let grading = compute_grading(&diagram);
            let commutative = is_commutative_parabolic(&grading).expect("one circled root");
            let mut levi_expected: Vec<String> = levi.iter().flat_map(|&(t, r)| canonical_name(t, r)).collect();
            levi_expected.sort();
            let levi_observed = grading.levi.canonical();
            let d1_observed = grading.dim(1);
            let passed = commutative
                && levi_expected == levi_observed
                && grading.levi.center_dim == 1
                && d1_observed == d1
                && grading.max_degree() == 1;
            out.push(Table1Check {
                row: row.row.to_string(),
                diagram: diagram.label(),
                commutative,
                levi_expected,
                levi_observed,
                center_dim: grading.levi.center_dim,
                d1_expected: d1,
                d1_observed,
                passed,
                note: row.note.map(str::to_string),
            });
        }
    }
    out
}
