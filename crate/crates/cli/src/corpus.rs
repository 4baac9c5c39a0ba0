//! Bundled example fans.

use crate::fanfile::FanFile;

pub const CORPUS: &[(&str, &str)] = &[
    ("p2", include_str!("../corpus/p2.json")),
    ("p1xp1", include_str!("../corpus/p1xp1.json")),
    ("f2", include_str!("../corpus/f2.json")),
    ("p112", include_str!("../corpus/p112.json")),
    ("p111122", include_str!("../corpus/p111122.json")),
    ("p111122_open", include_str!("../corpus/p111122_open.json")),
    ("p1xp1_minus_two_points", include_str!("../corpus/p1xp1_minus_two_points.json")),
    ("gerbe_p1", include_str!("../corpus/gerbe_p1.json")),
    ("p2_z3", include_str!("../corpus/p2_z3.json")),
];

pub fn names() -> impl Iterator<Item = &'static str> {
    CORPUS.iter().map(|(n, _)| *n)
}

pub fn source(name: &str) -> Option<&'static str> {
    CORPUS.iter().find(|(n, _)| *n == name).map(|(_, s)| *s)
}

pub fn load(name: &str) -> Option<FanFile> {
    source(name).map(|s| FanFile::parse(s).expect("bundled fans are well-formed"))
}

pub fn all() -> Vec<FanFile> {
    names().map(|n| load(n).expect("listed")).collect()
}
