//! Locating and loading benchmark instances.

use std::env;
use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tspevo::tsplib::parse_tsplib_with_metric;
use tspevo::{Instance64, Metric};

/// Environment variable naming the directory that holds `<name>.tsp` files.
pub const TSPLIB_DIR_VAR: &str = "TSPLIB_DIR";

/// Published optimal tour lengths (rounded Euclidean, except att48 which
/// TSPLIB states under its pseudo-Euclidean metric).
pub const KNOWN_OPTIMA: &[(&str, usize, f64)] = &[
    ("rat783", 783, 8806.0),
    ("a280", 280, 2579.0),
    ("u159", 159, 42080.0),
    ("ch130", 130, 6110.0),
    ("bier127", 127, 118282.0),
    ("kroA100", 100, 21282.0),
    ("pr76", 76, 108159.0),
    ("berlin52", 52, 7542.0),
    ("att48", 48, 10628.0),
    ("eil51", 51, 426.0),
    ("pr144", 144, 58537.0),
];

pub fn known_optimum(name: &str, n: usize) -> Option<f64> {
    KNOWN_OPTIMA
        .iter()
        .find(|(k, size, _)| *k == name && *size == n)
        .map(|&(_, _, opt)| opt)
}

/// `$TSPLIB_DIR` when set, else the `data/tsplib` directory shipped with
/// the workspace.
pub fn tsplib_dir() -> PathBuf {
    match env::var_os(TSPLIB_DIR_VAR) {
        Some(dir) if !dir.is_empty() => PathBuf::from(dir),
        _ => Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data/tsplib"),
    }
}

pub fn load_instance(path: &Path, metric: Metric) -> Result<Instance64> {
    let text = fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    parse_tsplib_with_metric(&text, metric).with_context(|| format!("cannot parse {}", path.display()))
}

/// Interprets `spec` as a file path when it names an existing file,
/// otherwise as an instance name under `dir`.
pub fn resolve(spec: &str, dir: &Path) -> PathBuf {
    let p = Path::new(spec);
    if p.is_file() {
        return p.to_path_buf();
    }
    let file = if spec.ends_with(".tsp") {
        spec.to_string()
    } else {
        format!("{spec}.tsp")
    };
    dir.join(file)
}

/// `n` cities uniform on a 1000 x 1000 square.
pub fn synthetic_instance(name: &str, n: usize, seed: u64, metric: Metric) -> Instance64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let coords = (0..n)
        .map(|_| (rng.gen_range(0.0..1000.0), rng.gen_range(0.0..1000.0)))
        .collect();
    Instance64::from_coords(name, coords, metric).expect("at least three random cities")
}

/// Renders a coordinate instance as a TSPLIB file.
pub fn to_tsplib(inst: &Instance64) -> String {
    let mut s = format!(
        "NAME : {}\nTYPE : TSP\nDIMENSION : {}\nEDGE_WEIGHT_TYPE : EUC_2D\nNODE_COORD_SECTION\n",
        inst.name(),
        inst.len()
    );
    for (i, (x, y)) in inst.coords().iter().enumerate() {
        s.push_str(&format!("{} {} {}\n", i + 1, x, y));
    }
    s.push_str("EOF\n");
    s
}
