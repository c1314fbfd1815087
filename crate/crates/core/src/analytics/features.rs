use std::io::Write;
use std::time::Instant;

use crate::census::{graphlet_census, GraphletClass, GraphletFrequencies};
use crate::graph::{Graph, GraphError};
use crate::parallel::ParallelConfig;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct FeatureOptions {
    /// Apply `ln(1 + x)` to each count.
    pub log_scale: bool,
    /// Divide each value by the sum of its size group (k = 2, 3, 4).
    pub normalize: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FeatureRow {
    pub name: String,
    pub counts: GraphletFrequencies,
    pub values: [f64; GraphletClass::COUNT],
    /// Census wall-clock time for this graph.
    pub seconds: f64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FeatureFailure {
    pub name: String,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct FeatureMatrix {
    pub rows: Vec<FeatureRow>,
    pub failures: Vec<FeatureFailure>,
}

pub fn feature_vector(freqs: &GraphletFrequencies, options: &FeatureOptions) -> [f64; GraphletClass::COUNT] {
    let mut out = [0.0; GraphletClass::COUNT];
    for c in GraphletClass::ALL {
        let x = freqs.get(c) as f64;
        out[c.index()] = if options.log_scale { x.ln_1p() } else { x };
    }
    if options.normalize {
        for k in 2..=4 {
            let classes = GraphletClass::of_size(k);
            let total: f64 = classes.iter().map(|c| out[c.index()]).sum();
            if total > 0.0 {
                for c in classes {
                    out[c.index()] /= total;
                }
            }
        }
    }
    out
}

/// One row per successfully loaded graph, in input order. Graphs that fail to
/// load or count are recorded in `failures` and skipped.
pub fn feature_matrix<I>(graphs: I, config: &ParallelConfig, options: &FeatureOptions) -> FeatureMatrix
where
    I: IntoIterator<Item = (String, Result<Graph, GraphError>)>,
{
    let mut matrix = FeatureMatrix::default();
    for (name, loaded) in graphs {
        let g = match loaded {
            Ok(g) => g,
            Err(e) => {
                matrix.failures.push(FeatureFailure { name, reason: e.to_string() });
                continue;
            }
        };
        let t = Instant::now();
        match graphlet_census(&g, config) {
            Ok(counts) => {
                let seconds = t.elapsed().as_secs_f64();
                let values = feature_vector(&counts, options);
                matrix.rows.push(FeatureRow { name, counts, values, seconds });
            }
            Err(e) => matrix.failures.push(FeatureFailure { name, reason: e.to_string() }),
        }
    }
    matrix
}

impl FeatureMatrix {
    /// CSV with a `name` column and one column per class. Raw counts are
    /// written as integers; scaled values as floats.
    pub fn write_csv<W: Write>(&self, options: &FeatureOptions, with_timing: bool, mut out: W) -> std::io::Result<()> {
        write!(out, "name")?;
        for c in GraphletClass::ALL {
            write!(out, ",{}", c.id())?;
        }
        if with_timing {
            write!(out, ",seconds")?;
        }
        writeln!(out)?;
        let raw = !options.log_scale && !options.normalize;
        for row in &self.rows {
            write!(out, "{}", row.name)?;
            for c in GraphletClass::ALL {
                if raw {
                    write!(out, ",{}", row.counts.get(c))?;
                } else {
                    write!(out, ",{}", row.values[c.index()])?;
                }
            }
            if with_timing {
                write!(out, ",{}", row.seconds)?;
            }
            writeln!(out)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;

    #[test]
    fn rows_follow_input_and_skip_failures() {
        let items = vec![
            ("k3".to_string(), Ok(generators::complete(3))),
            ("bad".to_string(), Err(GraphError::Empty)),
            ("k4".to_string(), Ok(generators::complete(4))),
        ];
        let m = feature_matrix(items, &ParallelConfig::serial(), &FeatureOptions::default());
        assert_eq!(m.rows.len(), 2);
        assert_eq!(m.failures, vec![FeatureFailure { name: "bad".into(), reason: "input contains no edges".into() }]);
        let i = GraphletClass::FourClique.index();
        assert_eq!((m.rows[0].values[i], m.rows[1].values[i]), (0.0, 1.0));
        let mut buf = Vec::new();
        m.write_csv(&FeatureOptions::default(), false, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("name,g2_1,g2_2,g3_1"));
        assert!(text.contains("\nk4,6,0,4,0,0,0,1,"));
    }

    #[test]
    fn normalized_groups_sum_to_one() {
        let f = graphlet_census(&generators::gnp(20, 0.3, 2), &ParallelConfig::serial()).unwrap();
        let v = feature_vector(&f, &FeatureOptions { log_scale: true, normalize: true });
        for k in 2..=4 {
            let s: f64 = GraphletClass::of_size(k).iter().map(|c| v[c.index()]).sum();
            assert!((s - 1.0).abs() < 1e-12);
        }
    }
}
