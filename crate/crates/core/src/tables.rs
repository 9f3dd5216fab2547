//! Reference tables: the 27-line intersection matrix, the Galois image
//! classes and the singularity resolution data.

use std::fmt;

use num_rational::Rational64;
use serde::Serialize;

use crate::lattice::{intersection_table, LineLabel};
use crate::minimality::{
    galclass_reference, galcrit_reference, invariant_rank, max_reachable_degree, GALCLASS_WORDS,
    GALCRIT_WORDS,
};
use crate::quotient::{rational_string, supported_types, table1_delta};

#[derive(Debug, Clone, Serialize)]
pub struct IntersectionTable {
    pub labels: Vec<String>,
    pub rows: Vec<Vec<i64>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ClassRow {
    pub generators: String,
    pub order: usize,
    pub invariant_rank: usize,
    pub max_degree: i64,
}

#[derive(Debug, Clone, Serialize)]
pub struct SingularityRow {
    pub kind: String,
    #[serde(with = "rational_string")]
    pub d_k2: Rational64,
    #[serde(with = "rational_string")]
    pub d_c2: Rational64,
    #[serde(with = "rational_string")]
    pub d_d2: Rational64,
    pub chain: Vec<i64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Tables {
    pub intersections: IntersectionTable,
    pub galois_classes: Vec<ClassRow>,
    pub rational_with_nonrational_quotient: Vec<ClassRow>,
    pub singularities: Vec<SingularityRow>,
}

fn class_rows(words: &[&[&str]], groups: Vec<crate::weyl::Subgroup>) -> Vec<ClassRow> {
    words
        .iter()
        .zip(groups)
        .map(|(w, g)| ClassRow {
            generators: format!("⟨{}⟩", w.join(",")),
            order: g.order(),
            invariant_rank: invariant_rank(&g),
            max_degree: max_reachable_degree(&g).degree,
        })
        .collect()
}

pub fn tables() -> Tables {
    let labels = LineLabel::all().iter().map(ToString::to_string).collect();
    let rows = intersection_table().iter().map(|r| r.to_vec()).collect();
    let singularities = supported_types()
        .into_iter()
        .map(|t| {
            let d = table1_delta(t).expect("supported type");
            SingularityRow {
                kind: t.to_string(),
                d_k2: d.d_k2,
                d_c2: d.d_c2,
                d_d2: d.d_d2,
                chain: d.chain,
            }
        })
        .collect();
    Tables {
        intersections: IntersectionTable { labels, rows },
        galois_classes: class_rows(&GALCLASS_WORDS, galclass_reference()),
        rational_with_nonrational_quotient: class_rows(&GALCRIT_WORDS, galcrit_reference()),
        singularities,
    }
}

fn write_classes(f: &mut fmt::Formatter<'_>, rows: &[ClassRow]) -> fmt::Result {
    writeln!(
        f,
        "{:<4}{:<14}{:>6}{:>6}{:>6}",
        "#", "generators", "order", "rank", "K^2"
    )?;
    for (i, r) in rows.iter().enumerate() {
        // pad by characters, not bytes
        let pad = 14usize.saturating_sub(r.generators.chars().count());
        writeln!(
            f,
            "{:<4}{}{}{:>6}{:>6}{:>6}",
            i + 1,
            r.generators,
            " ".repeat(pad),
            r.order,
            r.invariant_rank,
            r.max_degree
        )?;
    }
    Ok(())
}

impl fmt::Display for Tables {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Intersection numbers of the 27 lines")?;
        write!(f, "{:>4}", "")?;
        for l in &self.intersections.labels {
            write!(f, "{l:>4}")?;
        }
        writeln!(f)?;
        for (l, row) in self
            .intersections
            .labels
            .iter()
            .zip(&self.intersections.rows)
        {
            write!(f, "{l:>4}")?;
            for x in row {
                write!(f, "{x:>4}")?;
            }
            writeln!(f)?;
        }
        writeln!(f)?;
        writeln!(
            f,
            "Galois images with invariant rank > 1 that become minimal with G = ⟨ab⟩"
        )?;
        write_classes(f, &self.galois_classes)?;
        writeln!(f)?;
        writeln!(
            f,
            "Galois images allowing a rational X with non-rational X/G"
        )?;
        write_classes(f, &self.rational_with_nonrational_quotient)?;
        writeln!(f)?;
        writeln!(f, "Resolution of cyclic quotient singularities")?;
        writeln!(
            f,
            "{:<10}{:>7}{:>7}{:>7}  chain",
            "type", "dK^2", "dC^2", "dD^2"
        )?;
        for s in &self.singularities {
            let chain: Vec<String> = s.chain.iter().map(ToString::to_string).collect();
            writeln!(
                f,
                "{:<10}{:>7}{:>7}{:>7}  [{}]",
                s.kind,
                s.d_k2,
                s.d_c2,
                s.d_d2,
                chain.join(", ")
            )?;
        }
        Ok(())
    }
}
