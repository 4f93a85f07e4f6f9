use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One line of a component ledger: `count` components (or the degree of
/// a single component) entering with `multiplicity`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LedgerEntry {
    pub label: String,
    pub count: u64,
    pub multiplicity: u64,
    pub provenance: String,
}

impl LedgerEntry {
    pub fn new(label: impl Into<String>, count: u64, multiplicity: u64, provenance: impl Into<String>) -> Self {
        LedgerEntry {
            label: label.into(),
            count,
            multiplicity,
            provenance: provenance.into(),
        }
    }

    pub fn weight(&self) -> u64 {
        self.count * self.multiplicity
    }
}

/// Itemized decomposition of a target degree.
///
/// Construction checks that every count and multiplicity is positive and
/// that the weighted sum hits the target, so a ledger value in hand is
/// always balanced.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentLedger {
    pub target_name: String,
    pub target_degree: u64,
    pub entries: Vec<LedgerEntry>,
}

impl ComponentLedger {
    pub fn new(target_name: impl Into<String>, target_degree: u64, entries: Vec<LedgerEntry>) -> Result<Self> {
        let ledger = ComponentLedger {
            target_name: target_name.into(),
            target_degree,
            entries,
        };
        ledger.validate()?;
        Ok(ledger)
    }

    pub fn validate(&self) -> Result<()> {
        if let Some(e) = self.entries.iter().find(|e| e.count == 0 || e.multiplicity == 0) {
            return Err(Error::Internal(format!(
                "ledger {}: entry {:?} has a zero count or multiplicity",
                self.target_name, e.label
            )));
        }
        let total = self.total();
        if total != self.target_degree {
            return Err(Error::Internal(format!(
                "ledger {}: entries sum to {total}, expected {}",
                self.target_name, self.target_degree
            )));
        }
        Ok(())
    }

    pub fn total(&self) -> u64 {
        self.entries.iter().map(LedgerEntry::weight).sum()
    }

    /// `(count, multiplicity)` pairs in ledger order.
    pub fn shape(&self) -> Vec<(u64, u64)> {
        self.entries.iter().map(|e| (e.count, e.multiplicity)).collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("ledger serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn balanced_ledger_accepted() {
        let l = ComponentLedger::new(
            "demo",
            36,
            vec![LedgerEntry::new("a", 24, 1, "x"), LedgerEntry::new("b", 4, 3, "y")],
        )
        .unwrap();
        assert_eq!(l.total(), 36);
        assert_eq!(l.shape(), vec![(24, 1), (4, 3)]);
    }

    #[test]
    fn unbalanced_or_zero_entries_rejected() {
        assert!(ComponentLedger::new("demo", 35, vec![LedgerEntry::new("a", 35, 0, "")]).is_err());
        assert!(ComponentLedger::new("demo", 35, vec![LedgerEntry::new("a", 36, 1, "")]).is_err());
    }

    #[test]
    fn json_key_order_is_stable() {
        let l = ComponentLedger::new("t", 2, vec![LedgerEntry::new("a", 2, 1, "p")]).unwrap();
        let s = serde_json::to_string(&l).unwrap();
        assert_eq!(
            s,
            r#"{"target_name":"t","target_degree":2,"entries":[{"label":"a","count":2,"multiplicity":1,"provenance":"p"}]}"#
        );
        let back: ComponentLedger = serde_json::from_str(&s).unwrap();
        assert_eq!(back, l);
    }
}
