//! Permutations on `{0..n}` and the cycle-notation parser used for
//! generator input (points are written 1-based).

use std::fmt;

use super::GroupError;

/// Largest supported degree; points are stored as `u8`.
pub const MAX_DEGREE: usize = 255;

/// A permutation stored by its image list: `self.images()[i]` is the image of `i`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Box<[u8]>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        assert!(degree <= MAX_DEGREE);
        Self {
            images: (0..degree).map(|i| i as u8).collect(),
        }
    }

    /// Builds from an image list, checking that it is a bijection.
    pub fn from_images(images: Vec<usize>) -> Result<Self, GroupError> {
        let n = images.len();
        if n > MAX_DEGREE {
            return Err(GroupError::InvalidParameter(format!(
                "permutation degree {n} exceeds {MAX_DEGREE}"
            )));
        }
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n || std::mem::replace(&mut seen[x], true) {
                return Err(GroupError::InvalidParameter(format!(
                    "image list {images:?} is not a bijection"
                )));
            }
        }
        Ok(Self {
            images: images.into_iter().map(|x| x as u8).collect(),
        })
    }

    /// Builds from 0-based cycles on a given degree.
    pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Self, GroupError> {
        let mut images: Vec<usize> = (0..degree).collect();
        let mut touched = vec![false; degree];
        for cycle in cycles {
            for (k, &x) in cycle.iter().enumerate() {
                if x >= degree {
                    return Err(GroupError::InvalidParameter(format!(
                        "point {} outside degree {degree}",
                        x + 1
                    )));
                }
                if std::mem::replace(&mut touched[x], true) {
                    return Err(GroupError::InvalidParameter(format!(
                        "point {} repeated in cycle notation",
                        x + 1
                    )));
                }
                images[x] = cycle[(k + 1) % cycle.len()];
            }
        }
        Self::from_images(images)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[u8] {
        &self.images
    }

    pub fn apply(&self, point: usize) -> usize {
        self.images[point] as usize
    }

    /// `self` first, then `other`: `(self * other)(i) = other(self(i))`.
    pub fn then(&self, other: &Self) -> Self {
        debug_assert_eq!(self.degree(), other.degree());
        Self {
            images: self.images.iter().map(|&i| other.images[i as usize]).collect(),
        }
    }

    /// Writes the product into `out` without allocating a new permutation.
    pub fn then_into(&self, other: &Self, out: &mut Vec<u8>) {
        out.clear();
        out.extend(self.images.iter().map(|&i| other.images[i as usize]));
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0u8; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize] = i as u8;
        }
        Self { images: inv.into() }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x as usize)
    }

    /// Nontrivial cycles as 0-based point lists, each starting at its least point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut x = self.apply(start);
            while x != start {
                seen[x] = true;
                cycle.push(x);
                x = self.apply(x);
            }
            if cycle.len() > 1 {
                out.push(cycle);
            }
        }
        out
    }

    /// Cycle lengths including fixed points, descending.
    pub fn cycle_type(&self) -> Vec<usize> {
        let moved: usize = self.cycles().iter().map(Vec::len).sum();
        let mut lens: Vec<usize> = self.cycles().iter().map(Vec::len).collect();
        lens.extend(std::iter::repeat_n(1, self.degree() - moved));
        lens.sort_unstable_by(|a, b| b.cmp(a));
        lens
    }

    pub fn order(&self) -> u64 {
        self.cycles()
            .iter()
            .fold(1, |acc, c| crate::arith::lcm(acc, c.len() as u64))
    }

    pub fn is_even(&self) -> bool {
        self.cycles().iter().map(|c| c.len() - 1).sum::<usize>() % 2 == 0
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for cycle in cycles {
            f.write_str("(")?;
            for (k, x) in cycle.iter().enumerate() {
                if k > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{}", x + 1)?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Parses comma-separated generators in cycle notation, e.g. `"(1 2 3)(4 5), (1 2)"`.
///
/// Points are 1-based and separated by whitespace (commas inside a cycle are
/// also accepted). All generators share the degree of the largest point
/// mentioned. Offsets in errors are relative to the start of `input`.
pub fn parse_generators(input: &str) -> Result<Vec<Permutation>, GroupError> {
    let bytes = input.as_bytes();
    let err = |offset: usize, message: &str| GroupError::Parse {
        offset,
        message: message.to_string(),
    };

    let mut generators: Vec<Vec<Vec<usize>>> = vec![Vec::new()];
    let mut i = 0;
    let mut max_point = 0usize;
    let mut saw_cycle_in_current = false;
    while i < bytes.len() {
        match bytes[i] {
            b' ' | b'\t' | b'\n' | b'\r' => i += 1,
            b',' => {
                if !saw_cycle_in_current {
                    return Err(err(i, "empty generator before ','"));
                }
                generators.push(Vec::new());
                saw_cycle_in_current = false;
                i += 1;
            }
            b'(' => {
                let open = i;
                i += 1;
                let mut cycle = Vec::new();
                loop {
                    while i < bytes.len() && matches!(bytes[i], b' ' | b'\t' | b',') {
                        i += 1;
                    }
                    if i >= bytes.len() {
                        return Err(err(open, "unclosed '('"));
                    }
                    if bytes[i] == b')' {
                        i += 1;
                        break;
                    }
                    let start = i;
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                    if start == i {
                        return Err(err(i, "expected a point number"));
                    }
                    let point: usize = input[start..i]
                        .parse()
                        .map_err(|_| err(start, "point number out of range"))?;
                    if point == 0 || point > MAX_DEGREE {
                        return Err(err(start, "points must lie in 1..=255"));
                    }
                    if cycle.contains(&(point - 1)) {
                        return Err(err(start, "point repeated within a cycle"));
                    }
                    max_point = max_point.max(point);
                    cycle.push(point - 1);
                }
                generators.last_mut().expect("nonempty").push(cycle);
                saw_cycle_in_current = true;
            }
            _ => return Err(err(i, "unexpected character")),
        }
    }
    if !saw_cycle_in_current {
        return Err(err(bytes.len(), "expected a generator in cycle notation"));
    }
    let degree = max_point.max(1);
    generators
        .iter()
        .map(|cycles| Permutation::from_cycles(degree, cycles))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_prints_cycle_notation() {
        let gens = parse_generators("(1 2 3)(4 5), (1 2)").unwrap();
        assert_eq!(gens.len(), 2);
        assert_eq!(gens[0].degree(), 5);
        assert_eq!(gens[0].to_string(), "(1 2 3)(4 5)");
        assert_eq!(gens[1].to_string(), "(1 2)");
        assert_eq!(gens[0].order(), 6);
        assert_eq!(gens[0].cycle_type(), vec![3, 2]);
    }

    #[test]
    fn composition_applies_left_factor_first() {
        let gens = parse_generators("(1 2),(2 3)").unwrap();
        let p = gens[0].then(&gens[1]);
        // 1 -> 2 -> 3, 3 -> 3 -> 2, 2 -> 1 -> 1
        assert_eq!(p.to_string(), "(1 3 2)");
        assert!(p.then(&p.inverse()).is_identity());
    }

    #[test]
    fn parse_errors_carry_offsets() {
        match parse_generators("(1 2)(1 x)") {
            Err(GroupError::Parse { offset, .. }) => assert_eq!(offset, 8),
            other => panic!("unexpected {other:?}"),
        }
        match parse_generators("(1 2") {
            Err(GroupError::Parse { offset, .. }) => assert_eq!(offset, 0),
            other => panic!("unexpected {other:?}"),
        }
        assert!(parse_generators("").is_err());
        assert!(parse_generators("(1 2),").is_err());
        assert!(parse_generators("(1 1)").is_err());
        assert!(parse_generators("(0 1)").is_err());
        assert!(parse_generators("(1 2)(2 3)").is_err());
    }
}
