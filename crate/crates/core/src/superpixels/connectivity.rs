use std::collections::{BTreeSet, VecDeque};

const NEIGHBORS: [(isize, isize); 4] = [(-1, 0), (0, -1), (0, 1), (1, 0)];

/// 4-connected components of equal labels, numbered in raster order of their
/// first pixel. Returns the component of each pixel and the component sizes.
fn components(rows: usize, cols: usize, labels: &[u32]) -> (Vec<usize>, Vec<usize>) {
    let mut comp = vec![usize::MAX; labels.len()];
    let mut sizes = Vec::new();
    let mut queue = VecDeque::new();
    for start in 0..labels.len() {
        if comp[start] != usize::MAX {
            continue;
        }
        let id = sizes.len();
        let mut size = 0;
        comp[start] = id;
        queue.push_back(start);
        while let Some(p) = queue.pop_front() {
            size += 1;
            let (r, c) = ((p / cols) as isize, (p % cols) as isize);
            for (dr, dc) in NEIGHBORS {
                let (nr, nc) = (r + dr, c + dc);
                if nr < 0 || nc < 0 || nr >= rows as isize || nc >= cols as isize {
                    continue;
                }
                let q = nr as usize * cols + nc as usize;
                if comp[q] == usize::MAX && labels[q] == labels[p] {
                    comp[q] = id;
                    queue.push_back(q);
                }
            }
        }
        sizes.push(size);
    }
    (comp, sizes)
}

/// True when every label forms a single 4-connected region.
pub fn is_four_connected(rows: usize, cols: usize, labels: &[u32]) -> bool {
    let (comp, sizes) = components(rows, cols, labels);
    let mut owner: std::collections::HashMap<u32, usize> = std::collections::HashMap::new();
    for (p, &l) in labels.iter().enumerate() {
        if *owner.entry(l).or_insert(comp[p]) != comp[p] {
            return false;
        }
    }
    owner.len() == sizes.len()
}

/// Splits every label into its 4-connected pieces, merges each piece smaller
/// than a quarter of the mean label area into its largest adjacent region,
/// and relabels the result densely in raster order.
///
/// The mean area uses the number of distinct input labels. Small pieces are
/// merged smallest first; ties go to the piece that appears first.
pub fn enforce_connectivity(rows: usize, cols: usize, labels: &[u32]) -> Vec<u32> {
    assert_eq!(labels.len(), rows * cols, "label image size mismatch");
    if labels.is_empty() {
        return Vec::new();
    }
    let distinct = labels.iter().collect::<BTreeSet<_>>().len();
    let min_size = (rows * cols) as f64 / distinct as f64 / 4.0;

    let (comp, sizes) = components(rows, cols, labels);
    let n = sizes.len();
    let mut adjacency = vec![BTreeSet::new(); n];
    for p in 0..labels.len() {
        let (r, c) = (p / cols, p % cols);
        for q in [(c + 1 < cols).then(|| p + 1), (r + 1 < rows).then(|| p + cols)].into_iter().flatten() {
            if comp[p] != comp[q] {
                adjacency[comp[p]].insert(comp[q]);
                adjacency[comp[q]].insert(comp[p]);
            }
        }
    }

    // parent[i] is the component that absorbed i
    let mut parent: Vec<usize> = (0..n).collect();
    let mut size = sizes;
    let mut alive: BTreeSet<(usize, usize)> = (0..n).map(|i| (size[i], i)).collect();
    while alive.len() > 1 {
        let &(smallest, id) = alive.iter().next().expect("nonempty");
        if smallest as f64 >= min_size {
            break;
        }
        let target = adjacency[id]
            .iter()
            .copied()
            .max_by(|&a, &b| size[a].cmp(&size[b]).then(b.cmp(&a)));
        let Some(target) = target else { break };

        alive.remove(&(size[id], id));
        alive.remove(&(size[target], target));
        size[target] += size[id];
        alive.insert((size[target], target));
        parent[id] = target;

        let absorbed = std::mem::take(&mut adjacency[id]);
        for other in absorbed {
            if other == target {
                continue;
            }
            adjacency[other].remove(&id);
            adjacency[other].insert(target);
            adjacency[target].insert(other);
        }
        adjacency[target].remove(&id);
    }

    let root = |mut i: usize| {
        while parent[i] != i {
            i = parent[i];
        }
        i
    };
    let mut dense = vec![u32::MAX; n];
    let mut next = 0u32;
    comp.iter()
        .map(|&ci| {
            let r = root(ci);
            if dense[r] == u32::MAX {
                dense[r] = next;
                next += 1;
            }
            dense[r]
        })
        .collect()
}
