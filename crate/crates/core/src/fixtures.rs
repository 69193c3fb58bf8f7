//! Reference set families for exercising the sequence classifier.
//!
//! Two hand-built overlap diagrams provide the raw sets: diagram A (sets
//! 1..=11) and diagram B (sets 12..=21). Each set owns a private element plus
//! one shared element per drawn overlap, so every intersection is exactly the
//! set of links switched on in [`OverlapOptions`]. Twenty-two reference
//! sequences select terms from the diagrams; a few need a private diagram
//! variant because their expected verdicts require an overlap to be absent.

use crate::graph::VertexSet;
use crate::nbh::NbhFamily;

/// Tuning knobs for the two overlap diagrams.
#[derive(Debug, Clone, Copy)]
pub struct OverlapOptions {
    /// Width of the four size-sensitive overlaps in diagram A (2∩7, 2∩8,
    /// 3∩8, 2∩9): one shared element when false, two when true.
    pub wide: bool,
    /// Keep the 2∩7 overlap of diagram A.
    pub link_2_7: bool,
    /// Keep the 3∩8 overlap of diagram A.
    pub link_3_8: bool,
    /// Keep the 13∩19 overlap of diagram B.
    pub link_13_19: bool,
}

impl Default for OverlapOptions {
    fn default() -> Self {
        OverlapOptions {
            wide: false,
            link_2_7: true,
            link_3_8: true,
            link_13_19: true,
        }
    }
}

/// Diagram A: sets indexed 1..=11 over universe 30.
///
/// Links (shared elements): 1-2, 2-3, 3-4, 4-5, 5-6, 6-7, 7-8, 8-9, 2-8, 3-8,
/// 2-9, 2-7, 4-10, 3-11, 9-11. All other pairs are disjoint. Every set also
/// holds one private element, so all sets are distinct with at least two
/// elements each.
pub fn diagram_a(opts: OverlapOptions) -> Vec<VertexSet> {
    // shared elements
    const A12: usize = 0;
    const A23: usize = 1;
    const A34: usize = 2;
    const A45: usize = 3;
    const A56: usize = 4;
    const A67: usize = 5;
    const A78: usize = 6;
    const A89: usize = 7;
    const A28: usize = 8;
    const A38: usize = 9;
    const A29: usize = 10;
    const A27: usize = 11;
    const A4_10: usize = 12;
    const A3_11: usize = 13;
    const A9_11: usize = 14;
    // private elements of sets 1..=11
    const P: [usize; 11] = [15, 16, 17, 18, 19, 20, 21, 22, 23, 24, 25];
    // second shared element of the wide overlaps
    const B28: usize = 26;
    const B38: usize = 27;
    const B29: usize = 28;
    const B27: usize = 29;

    let mut sets: Vec<Vec<usize>> = vec![
        vec![A12, P[0]],
        vec![A12, A23, A28, A29, P[1]],
        vec![A23, A34, A3_11, P[2]],
        vec![A34, A45, A4_10, P[3]],
        vec![A45, A56, P[4]],
        vec![A56, A67, P[5]],
        vec![A67, A78, P[6]],
        vec![A78, A89, A28, P[7]],
        vec![A89, A29, A9_11, P[8]],
        vec![A4_10, P[9]],
        vec![A3_11, A9_11, P[10]],
    ];
    // optional links; a dropped link leaves its element on the lower set only
    sets[1].push(A27);
    if opts.link_2_7 {
        sets[6].push(A27);
    }
    sets[2].push(A38);
    if opts.link_3_8 {
        sets[7].push(A38);
    }
    if opts.wide {
        sets[1].extend([B28, B29]);
        sets[7].push(B28);
        sets[8].push(B29);
        sets[2].push(B38);
        if opts.link_3_8 {
            sets[7].push(B38);
        }
        if opts.link_2_7 {
            sets[1].push(B27);
            sets[6].push(B27);
        }
    }
    sets.into_iter().map(VertexSet::from_iter).collect()
}

/// Diagram B: sets indexed 12..=21 over universe 20.
///
/// Links: 12-13, 13-14, 14-15, 15-16, 16-17, 17-18, 18-19, 13-19, 13-20,
/// 20-21; plus a private element per set.
pub fn diagram_b(opts: OverlapOptions) -> Vec<VertexSet> {
    const C: [usize; 7] = [0, 1, 2, 3, 4, 5, 6]; // 12-13 .. 18-19
    const C13_19: usize = 7;
    const C13_20: usize = 8;
    const C20_21: usize = 9;
    const Q: [usize; 10] = [10, 11, 12, 13, 14, 15, 16, 17, 18, 19];

    let mut sets: Vec<Vec<usize>> = vec![
        vec![C[0], Q[0]],
        vec![C[0], C[1], C13_20, Q[1]],
        vec![C[1], C[2], Q[2]],
        vec![C[2], C[3], Q[3]],
        vec![C[3], C[4], Q[4]],
        vec![C[4], C[5], Q[5]],
        vec![C[5], C[6], Q[6]],
        vec![C[6], Q[7]],
        vec![C13_20, C20_21, Q[8]],
        vec![C20_21, Q[9]],
    ];
    sets[1].push(C13_19);
    if opts.link_13_19 {
        sets[7].push(C13_19);
    }
    sets.into_iter().map(VertexSet::from_iter).collect()
}

pub const DIAGRAM_A_UNIVERSE: usize = 30;
pub const DIAGRAM_B_UNIVERSE: usize = 20;

/// Term indices of the 22 reference sequences (1-based set numbers).
pub fn sequence_terms(seq: usize) -> &'static [usize] {
    match seq {
        1 => &[1, 2, 3, 4, 5, 6, 7, 8, 9],
        2 => &[1, 2, 8, 7, 6, 5, 4, 10],
        3 => &[1, 2, 3, 4, 5, 6, 7, 8, 3, 4, 10],
        4 => &[1, 2, 3, 4, 5, 6, 7, 8, 2, 3, 4, 10],
        5 => &[1, 2, 3, 4, 5, 6, 5, 4, 10],
        6 => &[1, 2, 3, 2, 1, 2, 9],
        7 => &[9, 8, 2, 1, 2, 9],
        8 => &[9, 8, 3, 11, 9],
        9 => &[8, 3, 4, 5, 6, 7, 8],
        10 => &[2, 3, 4, 5, 6, 7, 2],
        11 => &[2, 3, 4, 5, 6, 7, 8],
        12 => &[1, 2, 3, 4, 5, 6, 7, 8, 9, 11, 3, 4, 3, 8, 2, 1],
        13 => &[8, 9, 11, 3, 4, 5, 6, 7],
        14 => &[8, 9, 11, 3],
        15 => &[2, 3, 4, 5, 6, 7, 9],
        16 => &[1, 8, 3],
        17 => &[9, 8, 6, 5],
        18 => &[8, 9, 10, 11, 3, 4, 10],
        19 => &[12, 13, 14, 15, 16, 17, 18, 19, 20, 21],
        20 => &[13, 14, 15, 16, 17, 18, 19],
        21 => &[12, 13, 14, 15, 16, 17, 18, 19],
        22 => &[13, 14, 15, 16, 17, 18, 19, 13, 20, 21],
        _ => panic!("reference sequences are numbered 1..=22"),
    }
}

/// Reference sequence `seq` instantiated over the given diagram options.
/// Sequences 1..=18 draw from diagram A, 19..=22 from diagram B.
pub fn sequence(seq: usize, opts: OverlapOptions) -> NbhFamily {
    let terms = sequence_terms(seq);
    let (sets, universe, base) = if seq <= 18 {
        (diagram_a(opts), DIAGRAM_A_UNIVERSE, 1)
    } else {
        (diagram_b(opts), DIAGRAM_B_UNIVERSE, 12)
    };
    NbhFamily::from_sets(
        universe,
        terms.iter().map(|&t| sets[t - base].clone()).collect(),
    )
    .expect("reference sequences are well-formed")
}

/// Default-diagram instantiation (unit overlaps, all links on).
pub fn sequence_default(seq: usize) -> NbhFamily {
    sequence(seq, OverlapOptions::default())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a_set(sets: &[VertexSet], i: usize) -> &VertexSet {
        &sets[i - 1]
    }

    fn b_set(sets: &[VertexSet], i: usize) -> &VertexSet {
        &sets[i - 12]
    }

    /// Every intersection of diagram A is exactly its drawn link.
    #[test]
    fn diagram_a_intersections_are_the_drawn_links() {
        let linked: &[(usize, usize)] = &[
            (1, 2),
            (2, 3),
            (3, 4),
            (4, 5),
            (5, 6),
            (6, 7),
            (7, 8),
            (8, 9),
            (2, 8),
            (3, 8),
            (2, 9),
            (2, 7),
            (4, 10),
            (3, 11),
            (9, 11),
        ];
        let sets = diagram_a(OverlapOptions::default());
        for i in 1..=11usize {
            for j in i + 1..=11 {
                let inter = a_set(&sets, i).intersection(a_set(&sets, j));
                if linked.contains(&(i, j)) {
                    assert_eq!(inter.len(), 1, "sets {i},{j} should share one element");
                } else {
                    assert!(inter.is_empty(), "sets {i},{j} should be disjoint");
                }
            }
        }
    }

    #[test]
    fn wide_diagram_only_fattens_the_four_sensitive_overlaps() {
        let thin = diagram_a(OverlapOptions::default());
        let wide = diagram_a(OverlapOptions {
            wide: true,
            ..OverlapOptions::default()
        });
        for i in 1..=11usize {
            for j in i + 1..=11 {
                let t = a_set(&thin, i).intersection(a_set(&thin, j)).len();
                let w = a_set(&wide, i).intersection(a_set(&wide, j)).len();
                if [(2, 7), (2, 8), (3, 8), (2, 9)].contains(&(i, j)) {
                    assert_eq!((t, w), (1, 2), "overlap {i},{j}");
                } else {
                    assert_eq!(t, w, "overlap {i},{j} should not change");
                }
            }
        }
    }

    #[test]
    fn dropped_links_vanish_without_side_effects() {
        let base = diagram_a(OverlapOptions::default());
        let no27 = diagram_a(OverlapOptions {
            link_2_7: false,
            ..OverlapOptions::default()
        });
        assert!(a_set(&no27, 2).intersection(a_set(&no27, 7)).is_empty());
        for i in 1..=11usize {
            for j in i + 1..=11 {
                if (i, j) != (2, 7) {
                    assert_eq!(
                        a_set(&base, i).intersection(a_set(&base, j)),
                        a_set(&no27, i).intersection(a_set(&no27, j)),
                        "pair {i},{j}"
                    );
                }
            }
        }
    }

    #[test]
    fn diagram_b_intersections_are_the_drawn_links() {
        let linked: &[(usize, usize)] = &[
            (12, 13),
            (13, 14),
            (14, 15),
            (15, 16),
            (16, 17),
            (17, 18),
            (18, 19),
            (13, 19),
            (13, 20),
            (20, 21),
        ];
        let sets = diagram_b(OverlapOptions::default());
        for i in 12..=21usize {
            for j in i + 1..=21 {
                let inter = b_set(&sets, i).intersection(b_set(&sets, j));
                if linked.contains(&(i, j)) {
                    assert_eq!(inter.len(), 1, "sets {i},{j} should share one element");
                } else {
                    assert!(inter.is_empty(), "sets {i},{j} should be disjoint");
                }
            }
        }
        let cut = diagram_b(OverlapOptions {
            link_13_19: false,
            ..OverlapOptions::default()
        });
        assert!(b_set(&cut, 13).intersection(b_set(&cut, 19)).is_empty());
    }

    #[test]
    fn sequences_are_well_formed() {
        for seq in 1..=22 {
            let f = sequence_default(seq);
            assert_eq!(f.len(), sequence_terms(seq).len());
        }
    }
}
