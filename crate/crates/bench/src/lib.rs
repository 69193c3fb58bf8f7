//! Shared instance builders for the benchmark suite.

use magicchains::Graph;

/// Cylindrical grids covering the shapes the searches care about: short,
/// wide, and square-ish.
pub fn grid_instances() -> Vec<(String, Graph)> {
    [(2usize, 8usize), (3, 6), (4, 5), (6, 8)]
        .into_iter()
        .map(|(k, n)| {
            (
                format!("{k}x{n}"),
                Graph::cylindrical_grid(k, n).expect("valid grid dimensions"),
            )
        })
        .collect()
}

/// Small graphs where the labeling search does real work.
pub fn solve_instances() -> Vec<(String, Graph)> {
    vec![
        ("cycle_4".into(), Graph::cycle(4).expect("cycle")),
        ("cycle_7".into(), Graph::cycle(7).expect("cycle")),
        ("path_9".into(), Graph::path(9).expect("path")),
        (
            "grid_3x3".into(),
            Graph::cylindrical_grid(3, 3).expect("grid"),
        ),
        (
            "grid_4x3".into(),
            Graph::cylindrical_grid(4, 3).expect("grid"),
        ),
    ]
}
