//! Strongly connected components (iterative Tarjan).

/// Component decomposition of a directed graph.
pub struct Sccs {
    /// Component index per node; `usize::MAX` for nodes never visited.
    pub comp: Vec<usize>,
    /// Whether each component contains a cycle (size > 1 or a self-loop).
    pub nontrivial: Vec<bool>,
    pub count: usize,
}

/// Decomposes the part of the graph reachable from `roots`.
pub fn tarjan<F, I>(n: usize, roots: &[usize], mut succ: F) -> Sccs
where
    F: FnMut(usize) -> I,
    I: IntoIterator<Item = usize>,
{
    const UNSEEN: usize = usize::MAX;
    let mut index = vec![UNSEEN; n];
    let mut low = vec![0usize; n];
    let mut on_stack = vec![false; n];
    let mut comp = vec![UNSEEN; n];
    let mut stack: Vec<usize> = Vec::new();
    let mut nontrivial: Vec<bool> = Vec::new();
    let mut next_index = 0;
    let mut adj: Vec<Option<Vec<usize>>> = vec![None; n];
    let mut self_loop = vec![false; n];

    for &root in roots {
        if index[root] != UNSEEN {
            continue;
        }
        let mut call: Vec<(usize, usize)> = vec![(root, 0)];
        index[root] = next_index;
        low[root] = next_index;
        next_index += 1;
        stack.push(root);
        on_stack[root] = true;
        while let Some(&(v, pos)) = call.last() {
            if adj[v].is_none() {
                let list: Vec<usize> = succ(v).into_iter().collect();
                self_loop[v] = list.contains(&v);
                adj[v] = Some(list);
            }
            let next = adj[v].as_ref().unwrap().get(pos).copied();
            if let Some(w) = next {
                call.last_mut().unwrap().1 += 1;
                if index[w] == UNSEEN {
                    index[w] = next_index;
                    low[w] = next_index;
                    next_index += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
            } else {
                call.pop();
                if let Some(&(parent, _)) = call.last() {
                    low[parent] = low[parent].min(low[v]);
                }
                if low[v] == index[v] {
                    let id = nontrivial.len();
                    let mut size = 0;
                    loop {
                        let w = stack.pop().unwrap();
                        on_stack[w] = false;
                        comp[w] = id;
                        size += 1;
                        if w == v {
                            break;
                        }
                    }
                    nontrivial.push(size > 1 || self_loop[v]);
                }
            }
        }
    }
    let count = nontrivial.len();
    Sccs {
        comp,
        nontrivial,
        count,
    }
}
