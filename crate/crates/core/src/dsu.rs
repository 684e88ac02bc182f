/// Union-find over `0..n` with path halving and union by size.
///
/// Up to [`INLINE`] elements are kept on the stack: connectivity checks on
/// small graphs run in the inner loop of enumeration sweeps.
#[derive(Clone, Debug)]
pub(crate) struct DisjointSets {
    store: Store,
    components: usize,
}

const INLINE: usize = 32;

#[derive(Clone, Debug)]
#[allow(clippy::large_enum_variant)]
enum Store {
    Inline { parent: [u32; INLINE], size: [u32; INLINE] },
    Heap { parent: Vec<u32>, size: Vec<u32> },
}

impl DisjointSets {
    pub(crate) fn new(n: usize) -> Self {
        let store = if n <= INLINE {
            let mut parent = [0; INLINE];
            for (i, p) in parent.iter_mut().enumerate() {
                *p = i as u32;
            }
            Store::Inline {
                parent,
                size: [1; INLINE],
            }
        } else {
            Store::Heap {
                parent: (0..n as u32).collect(),
                size: vec![1; n],
            }
        };
        DisjointSets { store, components: n }
    }

    fn arrays(&mut self) -> (&mut [u32], &mut [u32]) {
        match &mut self.store {
            Store::Inline { parent, size } => (parent, size),
            Store::Heap { parent, size } => (parent, size),
        }
    }

    pub(crate) fn find(&mut self, x: usize) -> usize {
        find_in(self.arrays().0, x)
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (parent, size) = self.arrays();
        let (mut ra, mut rb) = (find_in(parent, a), find_in(parent, b));
        if ra == rb {
            return false;
        }
        if size[ra] < size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        parent[rb] = ra as u32;
        size[ra] += size[rb];
        self.components -= 1;
        true
    }

    pub(crate) fn components(&self) -> usize {
        self.components
    }
}

fn find_in(parent: &mut [u32], mut x: usize) -> usize {
    while parent[x] as usize != x {
        parent[x] = parent[parent[x] as usize];
        x = parent[x] as usize;
    }
    x
}
