//! Documents bundled with the binary.

pub const BUNDLED: &[(&str, &str)] = &[
    ("unknot", include_str!("../corpus/unknot.json")),
    ("trefoil", include_str!("../corpus/trefoil.json")),
    ("figure-eight", include_str!("../corpus/figure-eight.json")),
    ("5_2", include_str!("../corpus/5_2.json")),
    ("t2_5", include_str!("../corpus/t2_5.json")),
    (
        "trefoil-twisted",
        include_str!("../corpus/trefoil-twisted.json"),
    ),
    (
        "figure-eight-twisted",
        include_str!("../corpus/figure-eight-twisted.json"),
    ),
];

pub fn get(name: &str) -> Option<&'static str> {
    BUNDLED
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, text)| *text)
}

pub fn names() -> Vec<&'static str> {
    BUNDLED.iter().map(|(n, _)| *n).collect()
}
