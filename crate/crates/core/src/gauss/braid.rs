use super::LinkGaussCode;

impl LinkGaussCode {
    /// Gauss code of the closure of a braid on `strands` strands.
    ///
    /// `word` lists generators as signed 1-based indices: `i` is σ_i and `-i`
    /// its inverse. At the j-th letter (crossing label `j + 1`) the strands in
    /// positions `i` and `i + 1` cross; for σ_i the strand leaving position
    /// `i` passes over, for σ_i⁻¹ it passes under. Components are ordered by
    /// their lowest starting position; a strand that never crosses anything
    /// closes up into an empty component.
    ///
    /// # Panics
    ///
    /// If a letter is zero or names a generator outside `1..strands`.
    pub fn braid_closure(strands: usize, word: &[i32]) -> LinkGaussCode {
        // passages recorded per starting position, tracked through the braid
        let mut at_position: Vec<usize> = (0..strands).collect();
        let mut passages: Vec<Vec<i32>> = vec![Vec::new(); strands];
        for (j, &g) in word.iter().enumerate() {
            assert!(g != 0, "braid letter 0");
            let i = g.unsigned_abs() as usize;
            assert!(i < strands, "generator {g} out of range for {strands} strands");
            let label = (j + 1) as i32;
            let left = at_position[i - 1];
            let right = at_position[i];
            if g > 0 {
                passages[left].push(label);
                passages[right].push(-label);
            } else {
                passages[left].push(-label);
                passages[right].push(label);
            }
            at_position.swap(i - 1, i);
        }
        // at_position[p] = starting position of the strand ending at p
        let mut next = vec![0; strands];
        for (end, &start) in at_position.iter().enumerate() {
            next[start] = end;
        }
        let mut seen = vec![false; strands];
        let mut components = Vec::new();
        for s in 0..strands {
            if seen[s] {
                continue;
            }
            let mut comp = Vec::new();
            let mut cur = s;
            while !seen[cur] {
                seen[cur] = true;
                comp.extend_from_slice(&passages[cur]);
                cur = next[cur];
            }
            components.push(comp);
        }
        LinkGaussCode { components }
    }

    /// The (2, n) torus link as the closure of σ₁ⁿ.
    pub fn torus_2(n: usize) -> LinkGaussCode {
        LinkGaussCode::braid_closure(2, &vec![1; n])
    }
}
