//! Reference sequences and tables bundled with the crate.
//!
//! The files under `data/` carry their own provenance headers.

use std::sync::OnceLock;

pub const A196667: &str = include_str!("../data/A196667.txt");
pub const A197185: &str = include_str!("../data/A197185.txt");
pub const A197297: &str = include_str!("../data/A197297.txt");
pub const PREFIXES: &str = include_str!("../data/prefixes.txt");
pub const TABLE1: &str = include_str!("../data/table1.csv");
pub const TABLE2: &str = include_str!("../data/table2.csv");
pub const ZEROS_1000: &str = include_str!("../data/zeros_1000.txt");

/// Largest prime covered by the bundled ψ-type index-1 champion list.
pub const A197185_RANGE: u64 = 1_286_451;
/// Largest prime covered by the bundled θ-type index-1 champion list.
pub const A197297_RANGE: u64 = 1_536_517;

fn data_lines(text: &str) -> impl Iterator<Item = &str> {
    text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'))
}

fn integers(text: &str) -> Vec<u64> {
    data_lines(text)
        .flat_map(str::split_whitespace)
        .map(|t| t.parse().expect("bundled data is well formed"))
        .collect()
}

/// Chebyshev primes of index 1 up to 10^5.
pub fn chebyshev_index1() -> &'static [u64] {
    static CELL: OnceLock<Vec<u64>> = OnceLock::new();
    CELL.get_or_init(|| integers(A196667))
}

pub fn riemann_psi_index1() -> &'static [u64] {
    static CELL: OnceLock<Vec<u64>> = OnceLock::new();
    CELL.get_or_init(|| integers(A197185))
}

pub fn riemann_theta_index1() -> &'static [u64] {
    static CELL: OnceLock<Vec<u64>> = OnceLock::new();
    CELL.get_or_init(|| integers(A197297))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Prefix {
    pub id: &'static str,
    pub name: &'static str,
    pub terms: Vec<u64>,
}

pub fn prefixes() -> &'static [Prefix] {
    static CELL: OnceLock<Vec<Prefix>> = OnceLock::new();
    CELL.get_or_init(|| {
        data_lines(PREFIXES)
            .map(|line| {
                let mut it = line.split_whitespace();
                let id = it.next().expect("id");
                let name = it.next().expect("name");
                let terms = it.map(|t| t.parse().expect("term")).collect();
                Prefix { id, name, terms }
            })
            .collect()
    })
}

/// Looks up a prefix by OEIS id or by its short name.
pub fn prefix(key: &str) -> Option<&'static Prefix> {
    prefixes().iter().find(|p| p.id == key || p.name == key)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Table1Row {
    pub limit: u64,
    pub n: usize,
    pub x_max: u64,
    pub eta_max: f64,
    pub x_max_riemann: u64,
    pub riemann_max: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Table2Row {
    pub x: u64,
    pub eta3: f64,
    pub riemann: f64,
    pub gauss: f64,
}

fn csv_fields(line: &str) -> Vec<&str> {
    line.split(',').map(str::trim).collect()
}

pub fn table1() -> Vec<Table1Row> {
    data_lines(TABLE1)
        .map(|line| {
            let f = csv_fields(line);
            Table1Row {
                limit: f[0].parse().unwrap(),
                n: f[1].parse().unwrap(),
                x_max: f[2].parse().unwrap(),
                eta_max: f[3].parse().unwrap(),
                x_max_riemann: f[4].parse().unwrap(),
                riemann_max: f[5].parse().unwrap(),
            }
        })
        .collect()
}

pub fn table2() -> Vec<Table2Row> {
    data_lines(TABLE2)
        .map(|line| {
            let f = csv_fields(line);
            Table2Row {
                x: f[0].parse().unwrap(),
                eta3: f[1].parse().unwrap(),
                riemann: f[2].parse().unwrap(),
                gauss: f[3].parse().unwrap(),
            }
        })
        .collect()
}
