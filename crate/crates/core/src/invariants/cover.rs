//! Minimum covers of a complex by facet-generated pieces.
//!
//! A piece is a set of facet positions (a bit mask). The property a piece
//! must have (categorical, sectioned, …) is closed under passing to smaller
//! pieces, so only maximal good pieces matter for the cover.

use crate::budget::Budget;

pub(crate) enum PieceVerdict<W> {
    Good(W),
    Bad,
    Unknown,
}

pub(crate) struct CoverOutcome<W> {
    /// Facet positions of each piece with its witness; `None` if no cover was found.
    pub pieces: Option<Vec<(Vec<usize>, W)>>,
    pub exact: bool,
}

pub(crate) fn positions(mask: u64) -> Vec<usize> {
    (0..64).filter(|&i| mask >> i & 1 == 1).collect()
}

/// Smallest subfamily of `masks` whose union is `full`, by iterative
/// deepening on the lowest uncovered facet.
pub(crate) fn exact_cover(masks: &[u64], full: u64) -> Option<Vec<usize>> {
    if full == 0 {
        return Some(Vec::new());
    }
    if masks.iter().fold(0, |acc, m| acc | m) & full != full {
        return None;
    }
    fn go(masks: &[u64], full: u64, covered: u64, left: usize, chosen: &mut Vec<usize>) -> bool {
        if covered & full == full {
            return true;
        }
        if left == 0 {
            return false;
        }
        let first = (full & !covered).trailing_zeros();
        for (i, &m) in masks.iter().enumerate() {
            if m >> first & 1 == 1 {
                chosen.push(i);
                if go(masks, full, covered | m, left - 1, chosen) {
                    return true;
                }
                chosen.pop();
            }
        }
        false
    }
    let n = full.count_ones() as usize;
    (1..=n).find_map(|k| {
        let mut chosen = Vec::new();
        go(masks, full, 0, k, &mut chosen).then_some(chosen)
    })
}

/// Minimum cover of `num_facets` facets by good pieces.
///
/// Every piece is examined when `2^F − 1 ≤ max_cover`, largest first,
/// skipping subsets of pieces already known good. The answer is exact when
/// treating undecided pieces as bad or as good gives the same minimum.
/// Otherwise pieces are grown greedily and the result is an upper bound.
pub(crate) fn minimal_cover<W>(
    num_facets: usize,
    budget: &Budget,
    mut verdict: impl FnMut(&[usize]) -> PieceVerdict<W>,
) -> CoverOutcome<W> {
    let exhaustive = num_facets < 64 && (1u128 << num_facets) - 1 <= budget.max_cover as u128;
    if exhaustive {
        exhaustive_cover(num_facets, budget, &mut verdict)
    } else {
        greedy_cover(num_facets, budget, &mut verdict)
    }
}

fn exhaustive_cover<W>(
    num_facets: usize,
    budget: &Budget,
    verdict: &mut impl FnMut(&[usize]) -> PieceVerdict<W>,
) -> CoverOutcome<W> {
    let full: u64 = (1u64 << num_facets) - 1;
    let mut masks: Vec<u64> = (1..=full).collect();
    masks.sort_by_key(|m| (std::cmp::Reverse(m.count_ones()), *m));
    let mut good: Vec<(u64, W)> = Vec::new();
    let mut unknown: Vec<u64> = Vec::new();
    for mask in masks {
        if good.iter().any(|(g, _)| mask & g == mask) {
            continue;
        }
        if budget.expired() {
            unknown.push(mask);
            continue;
        }
        match verdict(&positions(mask)) {
            PieceVerdict::Good(w) => good.push((mask, w)),
            PieceVerdict::Bad => {}
            PieceVerdict::Unknown => unknown.push(mask),
        }
    }
    let good_masks: Vec<u64> = good.iter().map(|(m, _)| *m).collect();
    let upper = exact_cover(&good_masks, full);
    let exact = unknown.is_empty() || {
        let mut optimistic = good_masks.clone();
        optimistic.extend(&unknown);
        exact_cover(&optimistic, full).map(|c| c.len()) == upper.as_ref().map(Vec::len)
    };
    let pieces = upper.map(|chosen| {
        let mut slots: Vec<Option<(u64, W)>> = good.into_iter().map(Some).collect();
        chosen
            .into_iter()
            .map(|i| {
                let (m, w) = slots[i].take().expect("chosen once");
                (positions(m), w)
            })
            .collect()
    });
    CoverOutcome { pieces, exact }
}

fn greedy_cover<W>(
    num_facets: usize,
    budget: &Budget,
    verdict: &mut impl FnMut(&[usize]) -> PieceVerdict<W>,
) -> CoverOutcome<W> {
    let mut covered = vec![false; num_facets];
    let mut pieces = Vec::new();
    let mut exact = true;
    while let Some(seed) = covered.iter().position(|c| !c) {
        let mut piece = vec![seed];
        let mut witness = match verdict(&piece) {
            PieceVerdict::Good(w) => w,
            // a single facet that fails rules out every piece containing it
            PieceVerdict::Bad => {
                return CoverOutcome {
                    pieces: None,
                    exact,
                }
            }
            PieceVerdict::Unknown => {
                return CoverOutcome {
                    pieces: None,
                    exact: false,
                }
            }
        };
        let order = (0..num_facets)
            .filter(|&f| !covered[f] && f != seed)
            .chain((0..num_facets).filter(|&f| covered[f]));
        for f in order.collect::<Vec<_>>() {
            if budget.expired() {
                break;
            }
            piece.push(f);
            piece.sort_unstable();
            match verdict(&piece) {
                PieceVerdict::Good(w) => witness = w,
                _ => piece.retain(|&x| x != f),
            }
        }
        for &f in &piece {
            covered[f] = true;
        }
        pieces.push((piece, witness));
    }
    exact &= pieces.len() == 1;
    CoverOutcome {
        pieces: Some(pieces),
        exact,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_cover_of_a_triangle_boundary() {
        // facets 0,1,2; any two form a good piece
        assert_eq!(exact_cover(&[0b011, 0b101, 0b110], 0b111).unwrap().len(), 2);
        assert_eq!(exact_cover(&[0b111], 0b111).unwrap().len(), 1);
        assert!(exact_cover(&[0b001, 0b010], 0b111).is_none());
    }

    #[test]
    fn down_closed_property() {
        let b = Budget::default();
        let out = minimal_cover(4, &b, |p| {
            if p.len() <= 2 {
                PieceVerdict::Good(p.to_vec())
            } else {
                PieceVerdict::Bad
            }
        });
        assert!(out.exact);
        let pieces = out.pieces.unwrap();
        assert_eq!(pieces.len(), 2);
        let mut all: Vec<usize> = pieces.iter().flat_map(|(p, _)| p.clone()).collect();
        all.sort_unstable();
        assert_eq!(all, [0, 1, 2, 3]);
    }

    #[test]
    fn undecided_pieces_spoil_exactness() {
        let b = Budget::default();
        let out = minimal_cover(3, &b, |p| match p.len() {
            1 => PieceVerdict::Good(()),
            3 => PieceVerdict::Unknown,
            _ => PieceVerdict::Bad,
        });
        assert!(!out.exact);
        assert_eq!(out.pieces.unwrap().len(), 3);
    }

    #[test]
    fn greedy_when_the_pool_is_capped() {
        let b = Budget {
            max_cover: 3,
            ..Budget::default()
        };
        let out = minimal_cover(4, &b, |p| {
            if p.len() <= 2 {
                PieceVerdict::Good(())
            } else {
                PieceVerdict::Bad
            }
        });
        assert!(!out.exact);
        assert_eq!(out.pieces.unwrap().len(), 2);
    }
}
