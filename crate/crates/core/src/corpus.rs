//! Small finite groups used as a shared test and self-check corpus.

use crate::groups::finite_table_of;
use crate::{FinAbDesc, FiniteGroupTable, MetacyclicDesc};

#[derive(Clone, Debug)]
pub struct CorpusGroup {
    pub name: String,
    /// Group-spec string when the group has one.
    pub spec: Option<String>,
    pub table: FiniteGroupTable,
    /// Closed-form multiplier when the group is abelian.
    pub abelian: Option<FinAbDesc>,
}

/// Invariant-factor lists `n_1 | n_2 | ...` with product at most `max_order`.
pub fn abelian_types(max_order: u64) -> Vec<Vec<u64>> {
    fn go(prefix: &mut Vec<u64>, prod: u64, max: u64, out: &mut Vec<Vec<u64>>) {
        out.push(prefix.clone());
        let start = prefix.last().copied().unwrap_or(2);
        let mut f = start;
        while prod * f <= max {
            if prefix.last().is_none_or(|&l| f % l == 0) {
                prefix.push(f);
                go(prefix, prod * f, max, out);
                prefix.pop();
            }
            f += 1;
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), 1, max_order, &mut out);
    out.sort_by_key(|v| (v.iter().product::<u64>(), v.clone()));
    out
}

fn fab_spec(f: &[u64]) -> String {
    let parts: Vec<String> = f.iter().map(|x| x.to_string()).collect();
    format!("fab:[{}]", parts.join(","))
}

/// Abelian groups, dihedral, dicyclic and further metacyclic groups of order `≤ max_order`.
pub fn corpus(max_order: usize) -> Vec<CorpusGroup> {
    let mut out = Vec::new();
    for f in abelian_types(max_order as u64) {
        let desc = FinAbDesc::new(&f);
        out.push(CorpusGroup {
            name: if f.is_empty() { "trivial".into() } else { format!("{desc}") },
            spec: Some(fab_spec(&f)),
            table: finite_table_of(&desc).expect("finite"),
            abelian: Some(desc),
        });
    }
    for k in 3..=max_order / 2 {
        let desc = MetacyclicDesc::new(k as u64, 2, k as u64 - 1).expect("dihedral parameters");
        out.push(CorpusGroup {
            name: format!("D{}", 2 * k),
            spec: Some(format!("mc:{k},2,{}", k - 1)),
            table: finite_table_of(&desc).expect("finite"),
            abelian: None,
        });
    }
    for k in 2..=max_order / 4 {
        out.push(CorpusGroup {
            name: format!("Q{}", 4 * k),
            spec: None,
            table: FiniteGroupTable::dicyclic(k),
            abelian: None,
        });
    }
    for (m, n, r, name) in [(3, 4, 2, "Z3:Z4"), (8, 2, 3, "SD16"), (8, 2, 5, "M16"), (4, 4, 3, "Z4:Z4")] {
        if (m * n) as usize > max_order {
            continue;
        }
        let desc = MetacyclicDesc::new(m, n, r).expect("consistent metacyclic parameters");
        out.push(CorpusGroup {
            name: name.into(),
            spec: Some(format!("mc:{m},{n},{r}")),
            table: finite_table_of(&desc).expect("finite"),
            abelian: None,
        });
    }
    out
}
