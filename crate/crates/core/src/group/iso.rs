use super::FiniteGroup;

/// Search for an isomorphism `A -> B` by trying images of `A`'s generators.
/// Returns the element map when one exists. Intended for small groups.
pub fn find_isomorphism(a: &FiniteGroup, b: &FiniteGroup) -> Option<Vec<usize>> {
    if a.order() != b.order() {
        return None;
    }
    let mut oa: Vec<usize> = a.elements().map(|x| a.element_order(x)).collect();
    let mut ob: Vec<usize> = b.elements().map(|x| b.element_order(x)).collect();
    oa.sort_unstable();
    ob.sort_unstable();
    if oa != ob || a.num_classes() != b.num_classes() {
        return None;
    }
    let gens = a.generators().to_vec();
    let candidates: Vec<Vec<usize>> = gens
        .iter()
        .map(|&g| {
            b.elements()
                .filter(|&y| b.element_order(y) == a.element_order(g))
                .collect()
        })
        .collect();
    let mut choice = vec![0usize; gens.len()];
    search(a, b, &gens, &candidates, &mut choice, 0)
}

fn search(
    a: &FiniteGroup,
    b: &FiniteGroup,
    gens: &[usize],
    candidates: &[Vec<usize>],
    choice: &mut Vec<usize>,
    depth: usize,
) -> Option<Vec<usize>> {
    if depth == gens.len() {
        let images: Vec<usize> = choice.clone();
        return extend(a, b, gens, &images);
    }
    for &c in &candidates[depth] {
        choice[depth] = c;
        if let Some(m) = search(a, b, gens, candidates, choice, depth + 1) {
            return Some(m);
        }
    }
    None
}

/// Extend generator images to a map by breadth-first words, then check it is a
/// bijective homomorphism.
fn extend(a: &FiniteGroup, b: &FiniteGroup, gens: &[usize], images: &[usize]) -> Option<Vec<usize>> {
    let n = a.order();
    let mut map = vec![usize::MAX; n];
    map[0] = 0;
    let mut queue = std::collections::VecDeque::from([0usize]);
    while let Some(u) = queue.pop_front() {
        for (&g, &h) in gens.iter().zip(images) {
            let v = a.mul(u, g);
            let w = b.mul(map[u], h);
            if map[v] == usize::MAX {
                map[v] = w;
                queue.push_back(v);
            } else if map[v] != w {
                return None;
            }
        }
    }
    let mut hit = vec![false; n];
    for &m in &map {
        if m == usize::MAX || hit[m] {
            return None;
        }
        hit[m] = true;
    }
    for x in 0..n {
        for y in 0..n {
            if map[a.mul(x, y)] != b.mul(map[x], map[y]) {
                return None;
            }
        }
    }
    Some(map)
}
