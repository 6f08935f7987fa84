//! Parameter rows of the candidate list and the known results for them.

use serde::{Deserialize, Serialize};

use crate::espec::EType;
use crate::gfp::is_prime;

/// One parameter row: `d = e·a·b`, with `e = r^m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RowParams {
    pub row: Option<u32>,
    pub e: u32,
    pub p: u32,
    pub d: u32,
    pub a: u32,
    pub b: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RowError {
    #[error("no catalogue row {0}")]
    UnknownRow(u32),
    #[error("invalid parameters: {0}")]
    Invalid(String),
}

impl RowParams {
    pub fn new(e: u32, p: u32, d: u32, a: u32, b: u32) -> Result<Self, RowError> {
        let r = RowParams { row: None, e, p, d, a, b };
        r.validate()?;
        Ok(r)
    }

    pub fn validate(&self) -> Result<(), RowError> {
        let bad = |s: String| Err(RowError::Invalid(s));
        if !is_prime(self.p) {
            return bad(format!("p = {} is not prime", self.p));
        }
        if self.a == 0 || self.b == 0 || self.e < 2 {
            return bad("need e >= 2 and a, b >= 1".into());
        }
        if self.e as u64 * self.a as u64 * self.b as u64 != self.d as u64 {
            return bad(format!("d = {} but e·a·b = {}", self.d, self.e * self.a * self.b));
        }
        let (r, _) = prime_power(self.e).ok_or_else(|| RowError::Invalid(format!("e = {} is not a prime power", self.e)))?;
        if r == self.p {
            return bad("e must be a power of a prime other than p".into());
        }
        if (self.q() - 1) % r as u64 != 0 {
            return bad(format!("{} does not divide p^a - 1", r));
        }
        Ok(())
    }

    pub fn r(&self) -> u32 {
        prime_power(self.e).expect("validated").0
    }
    pub fn m(&self) -> u32 {
        prime_power(self.e).expect("validated").1
    }
    pub fn q(&self) -> u64 {
        (self.p as u64).pow(self.a)
    }
    /// Whether the r = 2 cases are handled together through the
    /// symplectic-type group.
    pub fn unified(&self) -> bool {
        self.r() == 2 && (self.q() - 1) % 4 == 0
    }
    /// Model types from which normalizers are assembled.
    pub fn assembly_types(&self) -> Vec<EType> {
        if self.r() != 2 {
            vec![EType::OddExponent]
        } else if self.unified() {
            vec![EType::SymplecticType]
        } else {
            vec![EType::Plus, EType::Minus]
        }
    }
    pub fn space_size(&self) -> Option<u64> {
        (self.p as u64).checked_pow(self.d)
    }
    pub fn label(&self) -> String {
        match self.row {
            Some(n) => format!("row {n}"),
            None => format!("(e={}, p={}, d={}, a={}, b={})", self.e, self.p, self.d, self.a, self.b),
        }
    }
}

/// `n = r^m` with r prime.
pub fn prime_power(n: u32) -> Option<(u32, u32)> {
    if n < 2 {
        return None;
    }
    let r = (2..=n).find(|&k| n % k == 0)?;
    let (mut x, mut m) = (n, 0);
    while x % r == 0 {
        x /= r;
        m += 1;
    }
    (x == 1).then_some((r, m))
}

/// Catalogue rows with b = 1: (No., e, p, d, a).
pub const SINGLE_BLOCK_ROWS: [(u32, u32, u32, u32, u32); 103] = [
    (1, 16, 3, 16, 1),
    (2, 16, 5, 16, 1),
    (3, 9, 2, 18, 2),
    (4, 9, 7, 9, 1),
    (5, 9, 13, 9, 1),
    (6, 9, 2, 36, 4),
    (7, 9, 19, 9, 1),
    (8, 9, 5, 18, 2),
    (9, 8, 3, 8, 1),
    (10, 8, 5, 8, 1),
    (11, 8, 7, 8, 1),
    (12, 8, 3, 16, 2),
    (13, 8, 11, 8, 1),
    (14, 8, 13, 8, 1),
    (15, 8, 17, 8, 1),
    (16, 8, 19, 8, 1),
    (17, 8, 5, 16, 2),
    (18, 8, 3, 24, 3),
    (19, 4, 3, 4, 1),
    (20, 4, 5, 4, 1),
    (21, 4, 7, 4, 1),
    (22, 4, 3, 8, 2),
    (23, 4, 11, 4, 1),
    (24, 4, 13, 4, 1),
    (25, 4, 17, 4, 1),
    (26, 4, 19, 4, 1),
    (27, 4, 23, 4, 1),
    (28, 4, 5, 8, 2),
    (29, 4, 3, 12, 3),
    (30, 4, 29, 4, 1),
    (31, 4, 31, 4, 1),
    (32, 4, 37, 4, 1),
    (33, 4, 41, 4, 1),
    (34, 4, 43, 4, 1),
    (35, 4, 47, 4, 1),
    (36, 4, 7, 8, 2),
    (37, 4, 53, 4, 1),
    (38, 4, 59, 4, 1),
    (39, 4, 61, 4, 1),
    (40, 4, 67, 4, 1),
    (41, 4, 71, 4, 1),
    (42, 4, 73, 4, 1),
    (43, 4, 3, 16, 4),
    (44, 4, 11, 8, 2),
    (45, 4, 5, 12, 3),
    (46, 4, 13, 8, 2),
    (47, 4, 3, 20, 5),
    (48, 3, 2, 6, 2),
    (49, 3, 7, 3, 1),
    (50, 3, 13, 3, 1),
    (51, 3, 2, 12, 4),
    (52, 3, 19, 3, 1),
    (53, 3, 5, 6, 2),
    (54, 3, 7, 6, 2),
    (55, 3, 2, 18, 6),
    (56, 3, 11, 6, 2),
    (57, 3, 13, 6, 2),
    (58, 3, 2, 24, 8),
    (59, 3, 17, 6, 2),
    (60, 3, 7, 9, 3),
    (61, 3, 19, 6, 2),
    (62, 2, 3, 2, 1),
    (63, 2, 5, 2, 1),
    (64, 2, 7, 2, 1),
    (65, 2, 3, 4, 2),
    (66, 2, 11, 2, 1),
    (67, 2, 13, 2, 1),
    (68, 2, 17, 2, 1),
    (69, 2, 19, 2, 1),
    (70, 2, 23, 2, 1),
    (71, 2, 5, 4, 2),
    (72, 2, 3, 6, 3),
    (73, 2, 29, 2, 1),
    (74, 2, 7, 4, 2),
    (75, 2, 3, 8, 4),
    (76, 2, 11, 4, 2),
    (77, 2, 5, 6, 3),
    (78, 2, 13, 4, 2),
    (79, 2, 3, 10, 5),
    (80, 2, 17, 4, 2),
    (81, 2, 7, 6, 3),
    (82, 2, 19, 4, 2),
    (83, 2, 23, 4, 2),
    (84, 2, 5, 8, 4),
    (85, 2, 3, 12, 6),
    (86, 2, 29, 4, 2),
    (87, 2, 31, 4, 2),
    (88, 2, 11, 6, 3),
    (89, 2, 37, 4, 2),
    (90, 2, 41, 4, 2),
    (91, 2, 43, 4, 2),
    (92, 2, 3, 14, 7),
    (93, 2, 13, 6, 3),
    (94, 2, 47, 4, 2),
    (95, 2, 7, 8, 4),
    (96, 2, 53, 4, 2),
    (97, 2, 5, 10, 5),
    (98, 2, 59, 4, 2),
    (99, 2, 61, 4, 2),
    (100, 2, 67, 4, 2),
    (101, 2, 17, 6, 3),
    (102, 2, 71, 4, 2),
    (103, 2, 73, 4, 2),
];

/// Catalogue rows with b > 1: (No., e, p, d, a, b).
pub const MULTI_BLOCK_ROWS: [(u32, u32, u32, u32, u32, u32); 24] = [
    (104, 2, 3, 4, 1, 2),
    (105, 2, 5, 4, 1, 2),
    (106, 2, 7, 4, 1, 2),
    (107, 2, 11, 4, 1, 2),
    (108, 2, 13, 4, 1, 2),
    (109, 2, 17, 4, 1, 2),
    (110, 2, 3, 8, 2, 2),
    (111, 2, 3, 6, 1, 3),
    (112, 2, 5, 6, 1, 3),
    (113, 2, 3, 8, 1, 4),
    (114, 3, 7, 6, 1, 2),
    (115, 3, 2, 12, 2, 2),
    (116, 3, 2, 18, 2, 3),
    (117, 4, 3, 8, 1, 2),
    (118, 4, 5, 8, 1, 2),
    (119, 4, 7, 8, 1, 2),
    (120, 4, 11, 8, 1, 2),
    (121, 4, 3, 12, 1, 3),
    (122, 4, 3, 16, 1, 4),
    (123, 4, 3, 16, 2, 2),
    (124, 8, 3, 16, 1, 2),
    (125, 8, 5, 16, 1, 2),
    (126, 8, 3, 24, 1, 3),
    (127, 9, 2, 36, 2, 2),
];

/// Known count of groups without a regular orbit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct KnownResult {
    pub row: u32,
    pub num_groups: u64,
    pub max_order: u64,
    /// Set when the count refers to one extraspecial type only.
    pub etype: Option<EType>,
}

/// Every row with at least one group lacking a regular orbit. Rows not
/// listed have none.
pub const KNOWN_RESULTS: [KnownResult; 33] = [
    KnownResult { row: 1, num_groups: 12, max_order: 15925248, etype: Some(EType::Minus) },
    KnownResult { row: 3, num_groups: 40, max_order: 559872, etype: None },
    KnownResult { row: 9, num_groups: 27, max_order: 18432, etype: Some(EType::Plus) },
    KnownResult { row: 9, num_groups: 71, max_order: 165888, etype: Some(EType::Minus) },
    KnownResult { row: 10, num_groups: 22, max_order: 331776, etype: None },
    KnownResult { row: 19, num_groups: 14, max_order: 2304, etype: Some(EType::Plus) },
    KnownResult { row: 19, num_groups: 9, max_order: 640, etype: Some(EType::Minus) },
    KnownResult { row: 20, num_groups: 24, max_order: 4608, etype: None },
    KnownResult { row: 21, num_groups: 17, max_order: 6912, etype: Some(EType::Plus) },
    KnownResult { row: 22, num_groups: 72, max_order: 18432, etype: None },
    KnownResult { row: 23, num_groups: 4, max_order: 11520, etype: Some(EType::Plus) },
    KnownResult { row: 24, num_groups: 5, max_order: 13824, etype: None },
    KnownResult { row: 25, num_groups: 4, max_order: 18432, etype: None },
    KnownResult { row: 28, num_groups: 3, max_order: 55296, etype: None },
    KnownResult { row: 48, num_groups: 7, max_order: 1296, etype: None },
    KnownResult { row: 49, num_groups: 4, max_order: 1296, etype: None },
    KnownResult { row: 50, num_groups: 2, max_order: 2592, etype: None },
    KnownResult { row: 51, num_groups: 8, max_order: 12960, etype: None },
    KnownResult { row: 52, num_groups: 1, max_order: 3888, etype: None },
    KnownResult { row: 53, num_groups: 10, max_order: 10368, etype: None },
    KnownResult { row: 62, num_groups: 2, max_order: 48, etype: None },
    KnownResult { row: 63, num_groups: 2, max_order: 96, etype: None },
    KnownResult { row: 64, num_groups: 2, max_order: 144, etype: None },
    KnownResult { row: 65, num_groups: 13, max_order: 384, etype: None },
    KnownResult { row: 66, num_groups: 2, max_order: 240, etype: None },
    KnownResult { row: 67, num_groups: 2, max_order: 288, etype: None },
    KnownResult { row: 68, num_groups: 3, max_order: 384, etype: None },
    KnownResult { row: 69, num_groups: 2, max_order: 432, etype: None },
    KnownResult { row: 71, num_groups: 16, max_order: 1152, etype: None },
    KnownResult { row: 72, num_groups: 2, max_order: 1872, etype: None },
    KnownResult { row: 74, num_groups: 7, max_order: 2304, etype: None },
    KnownResult { row: 75, num_groups: 10, max_order: 7680, etype: None },
    KnownResult { row: 117, num_groups: 9, max_order: 2304, etype: None },
];

pub fn row(n: u32) -> Result<RowParams, RowError> {
    if let Some(&(no, e, p, d, a)) = SINGLE_BLOCK_ROWS.iter().find(|r| r.0 == n) {
        return Ok(RowParams { row: Some(no), e, p, d, a, b: 1 });
    }
    if let Some(&(no, e, p, d, a, b)) = MULTI_BLOCK_ROWS.iter().find(|r| r.0 == n) {
        return Ok(RowParams { row: Some(no), e, p, d, a, b });
    }
    Err(RowError::UnknownRow(n))
}

pub fn all_rows() -> Vec<RowParams> {
    (1..=127).map(|n| row(n).expect("catalogue is contiguous")).collect()
}

pub fn known_results(n: u32) -> Vec<KnownResult> {
    KNOWN_RESULTS.iter().filter(|k| k.row == n).copied().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalogue_is_consistent() {
        for r in all_rows() {
            r.validate().unwrap_or_else(|e| panic!("{}: {e}", r.label()));
        }
        // Rows listed with results must match the catalogue parameters.
        for k in KNOWN_RESULTS {
            assert!(row(k.row).is_ok());
        }
        assert_eq!(row(117).unwrap(), RowParams { row: Some(117), e: 4, p: 3, d: 8, a: 1, b: 2 });
        assert!(row(128).is_err());
    }

    #[test]
    fn modes() {
        assert_eq!(row(62).unwrap().assembly_types(), vec![EType::Plus, EType::Minus]);
        assert_eq!(row(63).unwrap().assembly_types(), vec![EType::SymplecticType]);
        assert_eq!(row(65).unwrap().assembly_types(), vec![EType::SymplecticType]);
        assert_eq!(row(49).unwrap().assembly_types(), vec![EType::OddExponent]);
        assert_eq!(prime_power(16), Some((2, 4)));
        assert_eq!(prime_power(12), None);
    }

    #[test]
    fn known_results_lookup() {
        assert_eq!(known_results(19).len(), 2);
        assert!(known_results(104).is_empty());
        let r62 = known_results(62)[0];
        assert_eq!((r62.num_groups, r62.max_order, r62.etype), (2, 48, None));
    }
}
