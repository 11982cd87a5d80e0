//! Permutations of a finite set of points.
//!
//! A [`Permutation`] of degree `n` is a bijection of `{0, .., n-1}`. Points
//! are stored 0-based; the textual cycle notation used for input and output
//! is 1-based, so `(1,2)(3,4,5)` swaps the first two points and rotates the
//! next three. Composition follows the function convention: `p.compose(&q)`
//! is the map `x -> p(q(x))`, i.e. `q` acts first.

use std::fmt;

use crate::error::{Error, Result};

/// Largest supported degree; images are stored as `u16`.
pub const MAX_DEGREE: usize = 1 << 16;

/// A bijection of `{0, .., degree-1}` in one-line form.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Box<[u16]>,
}

impl Permutation {
    /// Builds a permutation from its one-line image list, validating that it
    /// is a bijection.
    pub fn from_images(images: Vec<u16>) -> Result<Self> {
        let n = images.len();
        if n == 0 {
            return Err(Error::InvalidImages("degree must be at least 1".into()));
        }
        if n > MAX_DEGREE {
            return Err(Error::InvalidImages(format!(
                "degree {n} exceeds the maximum {MAX_DEGREE}"
            )));
        }
        let mut seen = vec![false; n];
        for &img in &images {
            let img = img as usize;
            if img >= n {
                return Err(Error::InvalidImages(format!(
                    "image {img} out of range for degree {n}"
                )));
            }
            if seen[img] {
                return Err(Error::InvalidImages(format!("image {img} repeated")));
            }
            seen[img] = true;
        }
        Ok(Self {
            images: images.into_boxed_slice(),
        })
    }

    /// The identity permutation of the given degree.
    pub fn identity(degree: usize) -> Self {
        assert!((1..=MAX_DEGREE).contains(&degree), "degree out of range");
        Self {
            images: (0..degree).map(|i| i as u16).collect(),
        }
    }

    /// Number of points acted on.
    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// Image of a single point.
    pub fn apply(&self, point: usize) -> usize {
        self.images[point] as usize
    }

    /// One-line image list.
    pub fn images(&self) -> &[u16] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images
            .iter()
            .enumerate()
            .all(|(i, &img)| i == img as usize)
    }

    /// Functional composition: the result maps `x` to `self(other(x))`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch(self.degree(), other.degree()));
        }
        let images = other
            .images
            .iter()
            .map(|&x| self.images[x as usize])
            .collect();
        Ok(Self { images })
    }

    /// The inverse bijection.
    pub fn inverse(&self) -> Self {
        let mut images = vec![0u16; self.degree()];
        for (i, &img) in self.images.iter().enumerate() {
            images[img as usize] = i as u16;
        }
        Self {
            images: images.into_boxed_slice(),
        }
    }

    /// Decomposition into disjoint cycles of length at least 2, each cycle
    /// rotated to start at its smallest point and cycles ordered by smallest
    /// point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut visited = vec![false; n];
        let mut cycles = Vec::new();
        for start in 0..n {
            if visited[start] || self.apply(start) == start {
                visited[start] = true;
                continue;
            }
            let mut cycle = Vec::new();
            let mut point = start;
            while !visited[point] {
                visited[point] = true;
                cycle.push(point);
                point = self.apply(point);
            }
            cycles.push(cycle);
        }
        cycles
    }

    /// Parses a single permutation in cycle notation; the degree is the
    /// largest point mentioned (1 if none is).
    pub fn parse(text: &str) -> Result<Self> {
        let cycles = scan_cycles(text, 1)?;
        let degree = max_point(&cycles).unwrap_or(1);
        assemble(&cycles, degree, 1)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for cycle in cycles {
            write!(f, "(")?;
            for (i, point) in cycle.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{}", point + 1)?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Parses a generator file: one permutation per line in cycle notation,
/// blank lines ignored. All permutations share one degree, the largest
/// point mentioned anywhere in the file.
pub fn parse_generator_file(text: &str) -> Result<Vec<Permutation>> {
    let mut parsed = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        parsed.push((lineno + 1, scan_cycles(line, lineno + 1)?));
    }
    let degree = parsed
        .iter()
        .filter_map(|(_, cycles)| max_point(cycles))
        .max()
        .unwrap_or(1);
    parsed
        .into_iter()
        .map(|(lineno, cycles)| assemble(&cycles, degree, lineno))
        .collect()
}

/// Scans one line of cycle notation into 1-based point lists, one per
/// parenthesised cycle.
fn scan_cycles(line: &str, lineno: usize) -> Result<Vec<Vec<usize>>> {
    let err = |col: usize, msg: &str| Error::CycleSyntax {
        line: lineno,
        col,
        msg: msg.into(),
    };
    let bytes = line.as_bytes();
    let mut i = 0;
    let mut cycles = Vec::new();
    while i < bytes.len() {
        match bytes[i] {
            b' ' | b'\t' => i += 1,
            b'(' => {
                i += 1;
                let mut cycle: Vec<usize> = Vec::new();
                loop {
                    while i < bytes.len() && (bytes[i] == b' ' || bytes[i] == b'\t') {
                        i += 1;
                    }
                    match bytes.get(i) {
                        Some(b')') if cycle.is_empty() => {
                            i += 1;
                            break;
                        }
                        Some(b'0'..=b'9') => {
                            let start = i;
                            while i < bytes.len() && bytes[i].is_ascii_digit() {
                                i += 1;
                            }
                            let point: usize = line[start..i]
                                .parse()
                                .map_err(|_| err(start + 1, "point out of range"))?;
                            if point == 0 {
                                return Err(err(start + 1, "points are numbered from 1"));
                            }
                            if point > MAX_DEGREE {
                                return Err(err(start + 1, "point out of range"));
                            }
                            if cycle.contains(&point) {
                                return Err(err(start + 1, "point repeated within a cycle"));
                            }
                            cycle.push(point);
                            while i < bytes.len() && (bytes[i] == b' ' || bytes[i] == b'\t') {
                                i += 1;
                            }
                            match bytes.get(i) {
                                Some(b',') => i += 1,
                                Some(b')') => {
                                    i += 1;
                                    break;
                                }
                                Some(_) => return Err(err(i + 1, "expected ',' or ')'")),
                                None => return Err(err(i + 1, "unclosed cycle")),
                            }
                        }
                        Some(_) => return Err(err(i + 1, "expected a point")),
                        None => return Err(err(i + 1, "unclosed cycle")),
                    }
                }
                cycles.push(cycle);
            }
            _ => return Err(err(i + 1, "expected '('")),
        }
    }
    if cycles.is_empty() {
        return Err(err(1, "expected at least one cycle"));
    }
    Ok(cycles)
}

fn max_point(cycles: &[Vec<usize>]) -> Option<usize> {
    cycles.iter().flatten().copied().max()
}

/// Turns scanned cycles into a permutation of the given degree. Cycles are
/// multiplied left to right with the rightmost acting first, so disjoint
/// cycles commute and `(1,2)(2,3)` means apply `(2,3)`, then `(1,2)`.
fn assemble(cycles: &[Vec<usize>], degree: usize, lineno: usize) -> Result<Permutation> {
    let mut result = Permutation::identity(degree);
    for cycle in cycles {
        let mut images: Vec<u16> = (0..degree as u16).collect();
        for w in cycle.windows(2) {
            images[w[0] - 1] = (w[1] - 1) as u16;
        }
        if cycle.len() > 1 {
            images[cycle[cycle.len() - 1] - 1] = (cycle[0] - 1) as u16;
        }
        let factor = Permutation::from_images(images).map_err(|e| Error::CycleSyntax {
            line: lineno,
            col: 1,
            msg: e.to_string(),
        })?;
        result = result.compose(&factor)?;
    }
    Ok(result)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(images: &[u16]) -> Permutation {
        Permutation::from_images(images.to_vec()).unwrap()
    }

    /// Composition agrees with the multiplication table of the symmetric
    /// group on three points, written out by hand. Elements: e, the three
    /// transpositions a=(1,2), b=(1,3), c=(2,3), and the rotations r=(1,2,3),
    /// s=(1,3,2). Entry `TABLE[i][j]` is `ELEMS[i] * ELEMS[j]` with the right
    /// factor acting first.
    #[test]
    fn compose_matches_s3_cayley_table() {
        let elems = [
            p(&[0, 1, 2]), // e
            p(&[1, 0, 2]), // a
            p(&[2, 1, 0]), // b
            p(&[0, 2, 1]), // c
            p(&[1, 2, 0]), // r
            p(&[2, 0, 1]), // s
        ];
        const E: usize = 0;
        const A: usize = 1;
        const B: usize = 2;
        const C: usize = 3;
        const R: usize = 4;
        const S: usize = 5;
        let table = [
            [E, A, B, C, R, S],
            [A, E, S, R, C, B],
            [B, R, E, S, A, C],
            [C, S, R, E, B, A],
            [R, B, C, A, S, E],
            [S, C, A, B, E, R],
        ];
        for (i, pi) in elems.iter().enumerate() {
            for (j, pj) in elems.iter().enumerate() {
                let prod = pi.compose(pj).unwrap();
                assert_eq!(prod, elems[table[i][j]], "row {i} col {j}");
            }
        }
    }

    #[test]
    fn identity_laws() {
        let e = Permutation::identity(5);
        let x = Permutation::parse("(1,4,2)(3,5)").unwrap();
        assert!(e.is_identity());
        assert_eq!(e.compose(&x).unwrap(), x);
        assert_eq!(x.compose(&e).unwrap(), x);
        assert!(x.compose(&x.inverse()).unwrap().is_identity());
        assert!(x.inverse().compose(&x).unwrap().is_identity());
    }

    #[test]
    fn from_images_rejects_non_bijections() {
        assert!(Permutation::from_images(vec![]).is_err());
        assert!(Permutation::from_images(vec![0, 0]).is_err());
        assert!(Permutation::from_images(vec![0, 2]).is_err());
    }

    #[test]
    fn compose_rejects_degree_mismatch() {
        let x = Permutation::identity(3);
        let y = Permutation::identity(4);
        assert!(matches!(x.compose(&y), Err(Error::DegreeMismatch(3, 4))));
    }

    #[test]
    fn parse_basic_cycles() {
        let x = Permutation::parse("(1,2)(3,4,5)").unwrap();
        assert_eq!(x.degree(), 5);
        assert_eq!(x.images(), &[1, 0, 3, 4, 2]);
        assert_eq!(x.to_string(), "(1,2)(3,4,5)");

        let e = Permutation::parse("()").unwrap();
        assert_eq!(e.degree(), 1);
        assert!(e.is_identity());
        assert_eq!(e.to_string(), "()");
    }

    #[test]
    fn parse_is_whitespace_insensitive() {
        let x = Permutation::parse(" ( 1 , 2 )\t( 3 ,4,5 ) ").unwrap();
        assert_eq!(x, Permutation::parse("(1,2)(3,4,5)").unwrap());
    }

    #[test]
    fn parse_fixed_point_extends_degree() {
        let x = Permutation::parse("(1,2)(5)").unwrap();
        assert_eq!(x.degree(), 5);
        assert_eq!(x.images(), &[1, 0, 2, 3, 4]);
    }

    #[test]
    fn parse_non_disjoint_cycles_applies_rightmost_first() {
        let x = Permutation::parse("(1,2)(2,3)").unwrap();
        // 1 -> 1 -> 2, 2 -> 3 -> 3, 3 -> 2 -> 1: equals (1,2,3).
        assert_eq!(x, Permutation::parse("(1,2,3)").unwrap());
    }

    #[test]
    fn parse_errors() {
        for bad in [
            "(1,2", "(0)", "(1,,2)", "(1 2)", "x(1,2)", "(1,2))", "", "(1,2,1)",
        ] {
            assert!(
                matches!(Permutation::parse(bad), Err(Error::CycleSyntax { .. })),
                "accepted {bad:?}"
            );
        }
    }

    #[test]
    fn parse_error_reports_position() {
        match Permutation::parse("(1,2)(3,x)") {
            Err(Error::CycleSyntax { line, col, .. }) => {
                assert_eq!(line, 1);
                assert_eq!(col, 9);
            }
            other => panic!("expected syntax error, got {other:?}"),
        }
    }

    #[test]
    fn generator_file_shares_degree() {
        let gens = parse_generator_file("(1,2)\n\n(1,2,3,4)\n").unwrap();
        assert_eq!(gens.len(), 2);
        assert_eq!(gens[0].degree(), 4);
        assert_eq!(gens[0].images(), &[1, 0, 2, 3]);
        assert_eq!(gens[1].images(), &[1, 2, 3, 0]);
    }

    #[test]
    fn generator_file_reports_line_numbers() {
        match parse_generator_file("(1,2)\n(3,4") {
            Err(Error::CycleSyntax { line, .. }) => assert_eq!(line, 2),
            other => panic!("expected syntax error, got {other:?}"),
        }
    }

    #[test]
    fn display_parse_round_trip() {
        for text in ["()", "(1,2)", "(1,2)(3,4,5)", "(1,3,5,7,9)(2,4)(6,8)"] {
            let x = Permutation::parse(text).unwrap();
            assert_eq!(x.to_string(), text);
            assert_eq!(Permutation::parse(&x.to_string()).unwrap(), x);
        }
    }
}
