//! The 194-entry generator catalog: recipes as (nested) transvectants of
//! the quartic and sextic, label validation, and the index/order count
//! table.

use crate::binary_forms::{quartic, sextic, transvectant, Covariant, CovariantError};
use crate::jacobi_ring::{is_jacobi_form, psi_j_inverse, JacobiError, JacobiPolynomial};
use crate::semiinvariants::source;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

/// The recipe table, one entry per line: `d_a,d_b,m,omega[,n] = expr` where
/// expr is built from f, g, earlier labels G(...), products, powers and
/// transvectants tv(lhs; rhs; i).
pub const CATALOG_TEXT: &str = include_str!("../data/catalog.txt");

/// Expected generator counts by (m, omega): rows m = 0..=45, columns
/// omega = 0, 2, 4, 6, 8, 10, 12.
pub const EXPECTED_COUNTS: [[usize; 7]; 46] = [
    [0, 0, 1, 1, 0, 0, 0],
    [0, 0, 0, 0, 1, 0, 0],
    [0, 0, 1, 1, 1, 0, 0],
    [0, 0, 1, 1, 1, 1, 1],
    [1, 1, 1, 1, 1, 0, 0],
    [0, 0, 2, 2, 1, 0, 0],
    [2, 2, 2, 1, 0, 0, 0],
    [0, 1, 2, 3, 2, 1, 0],
    [1, 3, 3, 1, 0, 0, 0],
    [1, 2, 4, 1, 0, 0, 0],
    [2, 3, 3, 0, 0, 0, 0],
    [0, 4, 5, 3, 1, 0, 0],
    [3, 4, 2, 0, 0, 0, 0],
    [1, 5, 3, 0, 0, 0, 0],
    [3, 5, 1, 0, 0, 0, 0],
    [3, 7, 3, 2, 0, 0, 0],
    [3, 4, 0, 0, 0, 0, 0],
    [3, 6, 1, 0, 0, 0, 0],
    [4, 3, 0, 0, 0, 0, 0],
    [3, 4, 1, 0, 0, 0, 0],
    [3, 1, 0, 0, 0, 0, 0],
    [4, 4, 1, 0, 0, 0, 0],
    [2, 1, 0, 0, 0, 0, 0],
    [3, 2, 0, 0, 0, 0, 0],
    [2, 0, 0, 0, 0, 0, 0],
    [3, 2, 1, 0, 0, 0, 0],
    [1, 0, 0, 0, 0, 0, 0],
    [1, 1, 0, 0, 0, 0, 0],
    [1, 0, 0, 0, 0, 0, 0],
    [2, 1, 0, 0, 0, 0, 0],
    [1, 0, 0, 0, 0, 0, 0],
    [1, 1, 0, 0, 0, 0, 0],
    [1, 0, 0, 0, 0, 0, 0],
    [1, 0, 0, 0, 0, 0, 0],
    [0, 0, 0, 0, 0, 0, 0],
    [1, 1, 0, 0, 0, 0, 0],
    [0, 0, 0, 0, 0, 0, 0],
    [1, 0, 0, 0, 0, 0, 0],
    [0, 0, 0, 0, 0, 0, 0],
    [0, 0, 0, 0, 0, 0, 0],
    [0, 0, 0, 0, 0, 0, 0],
    [1, 0, 0, 0, 0, 0, 0],
    [0, 0, 0, 0, 0, 0, 0],
    [0, 0, 0, 0, 0, 0, 0],
    [0, 0, 0, 0, 0, 0, 0],
    [1, 0, 0, 0, 0, 0, 0],
];

pub const EXPECTED_OMEGA_TOTALS: [usize; 7] = [60, 68, 38, 17, 8, 2, 1];
pub const EXPECTED_GRAND_TOTAL: usize = 194;

/// Catalog label (d_a, d_b)_{m, omega} with an optional disambiguating n.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct GenLabel {
    pub d_a: i64,
    pub d_b: i64,
    pub m: i64,
    pub omega: i64,
    pub n: Option<u32>,
}

impl fmt::Display for GenLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.n {
            Some(n) => write!(f, "G({},{},{},{},{})", self.d_a, self.d_b, self.m, self.omega, n),
            None => write!(f, "G({},{},{},{})", self.d_a, self.d_b, self.m, self.omega),
        }
    }
}

#[derive(Debug)]
pub enum CatalogError {
    Parse(String),
    UnknownLabel(String),
    ZeroGenerator(GenLabel),
    GradeMismatch(String),
    Covariant(CovariantError),
    Jacobi(JacobiError),
}

impl fmt::Display for CatalogError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CatalogError::Parse(m) => write!(f, "recipe parse error: {m}"),
            CatalogError::UnknownLabel(m) => write!(f, "unknown label: {m}"),
            CatalogError::ZeroGenerator(l) => write!(f, "recipe for {l} evaluates to zero"),
            CatalogError::GradeMismatch(m) => write!(f, "grade mismatch: {m}"),
            CatalogError::Covariant(e) => write!(f, "{e}"),
            CatalogError::Jacobi(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for CatalogError {}

impl From<CovariantError> for CatalogError {
    fn from(e: CovariantError) -> CatalogError {
        CatalogError::Covariant(e)
    }
}

/// One built catalog entry.
pub struct CatalogEntry {
    pub label: GenLabel,
    pub recipe: String,
    pub covariant: Covariant,
}

/// All 194 generators, built in file order (recipes reference only earlier
/// labels, so a single pass suffices and serves as the memoization cache).
pub struct Catalog {
    entries: Vec<CatalogEntry>,
    index: HashMap<GenLabel, usize>,
}

struct RecipeParser<'a> {
    src: &'a str,
    pos: usize,
    built: &'a HashMap<GenLabel, Covariant>,
}

impl<'a> RecipeParser<'a> {
    fn new(src: &'a str, built: &'a HashMap<GenLabel, Covariant>) -> Self {
        RecipeParser { src, pos: 0, built }
    }

    fn skip_ws(&mut self) {
        while self.src[self.pos..].starts_with(' ') {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src[self.pos..].chars().next()
    }

    fn eat(&mut self, c: char) -> Result<(), CatalogError> {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            Ok(())
        } else {
            Err(CatalogError::Parse(format!(
                "expected '{c}' at position {} in '{}'",
                self.pos, self.src
            )))
        }
    }

    fn integer(&mut self) -> Result<i64, CatalogError> {
        self.skip_ws();
        let start = self.pos;
        while self.src[self.pos..]
            .chars()
            .next()
            .is_some_and(|c| c.is_ascii_digit())
        {
            self.pos += 1;
        }
        self.src[start..self.pos]
            .parse()
            .map_err(|_| CatalogError::Parse(format!("expected integer in '{}'", self.src)))
    }

    /// Product of juxtaposed factors, each an optional power.
    fn expr(&mut self) -> Result<Covariant, CatalogError> {
        let mut acc: Option<Covariant> = None;
        loop {
            match self.peek() {
                Some('f' | 'g' | 'G' | 't' | '(') => {
                    let factor = self.factor()?;
                    acc = Some(match acc {
                        None => factor,
                        Some(a) => a.mul(&factor),
                    });
                }
                _ => break,
            }
        }
        acc.ok_or_else(|| CatalogError::Parse(format!("empty expression in '{}'", self.src)))
    }

    fn factor(&mut self) -> Result<Covariant, CatalogError> {
        let base = self.primary()?;
        if self.peek() == Some('^') {
            self.eat('^')?;
            let e = self.integer()?;
            Ok(base.pow(e as u32))
        } else {
            Ok(base)
        }
    }

    fn primary(&mut self) -> Result<Covariant, CatalogError> {
        match self.peek() {
            Some('f') => {
                self.eat('f')?;
                Ok(quartic())
            }
            Some('g') => {
                self.eat('g')?;
                Ok(sextic())
            }
            Some('(') => {
                self.eat('(')?;
                let e = self.expr()?;
                self.eat(')')?;
                Ok(e)
            }
            Some('t') => {
                self.eat('t')?;
                self.eat('v')?;
                self.eat('(')?;
                let lhs = self.expr()?;
                self.eat(';')?;
                let rhs = self.expr()?;
                self.eat(';')?;
                let i = self.integer()?;
                self.eat(')')?;
                Ok(transvectant(&lhs, &rhs, i as u32)?)
            }
            Some('G') => {
                self.eat('G')?;
                self.eat('(')?;
                let mut nums = vec![self.integer()?];
                while self.peek() == Some(',') {
                    self.eat(',')?;
                    nums.push(self.integer()?);
                }
                self.eat(')')?;
                let label = label_from_numbers(&nums)
                    .ok_or_else(|| CatalogError::Parse(format!("bad label in '{}'", self.src)))?;
                self.built
                    .get(&label)
                    .cloned()
                    .ok_or_else(|| CatalogError::UnknownLabel(label.to_string()))
            }
            other => Err(CatalogError::Parse(format!(
                "unexpected {:?} in '{}'",
                other, self.src
            ))),
        }
    }
}

fn label_from_numbers(nums: &[i64]) -> Option<GenLabel> {
    match nums {
        [a, b, m, w] => Some(GenLabel {
            d_a: *a,
            d_b: *b,
            m: *m,
            omega: *w,
            n: None,
        }),
        [a, b, m, w, n] => Some(GenLabel {
            d_a: *a,
            d_b: *b,
            m: *m,
            omega: *w,
            n: Some(*n as u32),
        }),
        _ => None,
    }
}

/// Parse the raw recipe table without evaluating anything.
pub fn parse_recipes() -> Result<Vec<(GenLabel, String)>, CatalogError> {
    let mut out = Vec::new();
    for (lineno, line) in CATALOG_TEXT.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let (lhs, rhs) = line
            .split_once('=')
            .ok_or_else(|| CatalogError::Parse(format!("line {}: missing '='", lineno + 1)))?;
        let nums: Vec<i64> = lhs
            .split(',')
            .map(|t| t.trim().parse())
            .collect::<Result<_, _>>()
            .map_err(|_| CatalogError::Parse(format!("line {}: bad label", lineno + 1)))?;
        let label = label_from_numbers(&nums)
            .ok_or_else(|| CatalogError::Parse(format!("line {}: bad label arity", lineno + 1)))?;
        out.push((label, rhs.trim().to_string()));
    }
    Ok(out)
}

impl Catalog {
    /// Build every generator, asserting that each is nonzero and that the
    /// computed grades agree with its label.
    pub fn build() -> Result<Catalog, CatalogError> {
        let recipes = parse_recipes()?;
        let mut built: HashMap<GenLabel, Covariant> = HashMap::new();
        let mut entries = Vec::with_capacity(recipes.len());
        let mut index = HashMap::new();
        for (label, recipe) in recipes {
            // label consistency: omega = 4 d_a + 6 d_b - 2m
            if label.omega != 4 * label.d_a + 6 * label.d_b - 2 * label.m {
                return Err(CatalogError::GradeMismatch(format!(
                    "{label}: label violates omega = 4 d_a + 6 d_b - 2m"
                )));
            }
            let mut parser = RecipeParser::new(&recipe, &built);
            let cov = parser.expr()?;
            parser.skip_ws();
            if parser.pos != recipe.len() {
                return Err(CatalogError::Parse(format!(
                    "{label}: trailing input in '{recipe}'"
                )));
            }
            if cov.is_zero() {
                return Err(CatalogError::ZeroGenerator(label));
            }
            let g = cov.grade()?;
            if (g.d_alpha, g.d_beta, g.order) != (label.d_a, label.d_b, label.omega) {
                return Err(CatalogError::GradeMismatch(format!(
                    "{label}: computed grades ({}, {}, {})",
                    g.d_alpha, g.d_beta, g.order
                )));
            }
            built.insert(label, cov.clone());
            index.insert(label, entries.len());
            entries.push(CatalogEntry {
                label,
                recipe,
                covariant: cov,
            });
        }
        Ok(Catalog { entries, index })
    }

    pub fn entries(&self) -> &[CatalogEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn generator(&self, label: &GenLabel) -> Option<&Covariant> {
        self.index.get(label).map(|&i| &self.entries[i].covariant)
    }

    /// Count generators by (m, omega).
    pub fn table(&self) -> CatalogTable {
        let mut counts = BTreeMap::new();
        for e in &self.entries {
            *counts.entry((e.label.m, e.label.omega)).or_insert(0) += 1;
        }
        CatalogTable { counts }
    }

    /// The source of a generator as an element of the a-frame ring.
    pub fn generator_as_jacobi(&self, label: &GenLabel) -> Result<JacobiPolynomial, CatalogError> {
        let cov = self
            .generator(label)
            .ok_or_else(|| CatalogError::UnknownLabel(label.to_string()))?;
        let s = source(cov)?;
        let p = psi_j_inverse(&s).map_err(CatalogError::Jacobi)?;
        if !is_jacobi_form(&p).map_err(CatalogError::Jacobi)? {
            return Err(CatalogError::GradeMismatch(format!(
                "{label}: source fails the membership test"
            )));
        }
        Ok(p)
    }
}

/// Generator counts arranged by index and order.
pub struct CatalogTable {
    pub counts: BTreeMap<(i64, i64), usize>,
}

impl CatalogTable {
    pub fn count(&self, m: i64, omega: i64) -> usize {
        self.counts.get(&(m, omega)).copied().unwrap_or(0)
    }

    pub fn omega_total(&self, omega: i64) -> usize {
        self.counts
            .iter()
            .filter(|&(&(_, w), _)| w == omega)
            .map(|(_, &c)| c)
            .sum()
    }

    pub fn grand_total(&self) -> usize {
        self.counts.values().sum()
    }

    /// Compare against the expected table; returns the first discrepancy.
    pub fn check_expected(&self) -> Result<(), String> {
        for (m, row) in EXPECTED_COUNTS.iter().enumerate() {
            for (col, &want) in row.iter().enumerate() {
                let omega = 2 * col as i64;
                let got = self.count(m as i64, omega);
                if got != want {
                    return Err(format!(
                        "count at m={m}, omega={omega}: got {got}, want {want}"
                    ));
                }
            }
        }
        for (col, &want) in EXPECTED_OMEGA_TOTALS.iter().enumerate() {
            let got = self.omega_total(2 * col as i64);
            if got != want {
                return Err(format!(
                    "omega={} total: got {got}, want {want}",
                    2 * col
                ));
            }
        }
        if self.grand_total() != EXPECTED_GRAND_TOTAL {
            return Err(format!("grand total {}", self.grand_total()));
        }
        Ok(())
    }

    /// CSV with the row/column layout of the published table.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("m,0,2,4,6,8,10,12,total\n");
        for m in 0..=45i64 {
            let row: Vec<usize> = (0..7).map(|c| self.count(m, 2 * c)).collect();
            let total: usize = row.iter().sum();
            out.push_str(&format!(
                "{m},{},{total}\n",
                row.iter()
                    .map(|c| c.to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            ));
        }
        let totals: Vec<usize> = (0..7).map(|c| self.omega_total(2 * c)).collect();
        out.push_str(&format!(
            "total,{},{}\n",
            totals
                .iter()
                .map(|c| c.to_string())
                .collect::<Vec<_>>()
                .join(","),
            self.grand_total()
        ));
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly;
    use std::sync::OnceLock;

    fn catalog() -> &'static Catalog {
        static CATALOG: OnceLock<Catalog> = OnceLock::new();
        CATALOG.get_or_init(|| Catalog::build().expect("catalog builds"))
    }

    fn label(d_a: i64, d_b: i64, m: i64, omega: i64) -> GenLabel {
        GenLabel {
            d_a,
            d_b,
            m,
            omega,
            n: None,
        }
    }

    #[test]
    fn recipe_table_is_well_formed() {
        let recipes = parse_recipes().unwrap();
        assert_eq!(recipes.len(), 194);
        let mut seen = std::collections::HashSet::new();
        for (l, _) in &recipes {
            assert!(seen.insert(*l), "duplicate label {l}");
            assert_eq!(l.omega, 4 * l.d_a + 6 * l.d_b - 2 * l.m, "{l}");
        }
    }

    #[test]
    fn basic_generators() {
        let c = catalog();
        assert_eq!(
            c.generator(&label(1, 0, 0, 4)).unwrap().poly,
            quartic().poly
        );
        assert_eq!(c.generator(&label(0, 1, 0, 6)).unwrap().poly, sextic().poly);
        // the order-0 invariant of index 4
        let inv = c.generator(&label(2, 0, 4, 0)).unwrap();
        assert_eq!(inv.grade().unwrap().order, 0);
    }

    #[test]
    fn table_matches_expected() {
        catalog().table().check_expected().unwrap();
    }

    #[test]
    fn sources_of_low_index_generators() {
        let c = catalog();
        assert_eq!(
            c.generator_as_jacobi(&label(1, 1, 2, 6)).unwrap().poly,
            parse_poly("(2*a0*b2 + 5*a2*b0)/30").unwrap()
        );
        assert_eq!(
            c.generator_as_jacobi(&label(2, 0, 2, 4)).unwrap().poly,
            parse_poly("a0*a2/3").unwrap()
        );
        assert_eq!(
            c.generator_as_jacobi(&label(0, 2, 2, 8)).unwrap().poly,
            parse_poly("(12*b0*b2 - 5*b1^2)/90").unwrap()
        );
        // The first transvectant of f and g: the defining formula produces
        // the opposite sign of the -a0 b1/6 normalization quoted alongside
        // A1 = -3 a0 b1; the observed scalar relative to that normalization
        // is -1 and is reported as such.
        assert_eq!(
            c.generator_as_jacobi(&label(1, 1, 1, 8)).unwrap().poly,
            parse_poly("a0*b1/6").unwrap()
        );
    }

    #[test]
    fn csv_shape() {
        let csv = catalog().table().to_csv();
        assert_eq!(csv.lines().count(), 48); // header + 46 rows + totals
        assert!(csv.ends_with("total,60,68,38,17,8,2,1,194\n"));
    }
}
