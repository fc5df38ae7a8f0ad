//! Rectilinear 2D sample grids with bilinear interpolation, loaded from CSV
//! rows of `x,y,c1[,c2...]`.

use std::io::Read;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::base::Real;
use crate::error::NoahError;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Real")]
pub struct RegularGrid<T> {
    xs: Vec<T>,
    ys: Vec<T>,
    /// `values[c][iy * nx + ix]`
    values: Vec<Vec<T>>,
}

impl<T: Real> RegularGrid<T> {
    /// Builds a grid from node coordinates and channel-major samples.
    pub fn new(xs: Vec<T>, ys: Vec<T>, values: Vec<Vec<T>>) -> Result<Self, NoahError> {
        if xs.len() < 2 || ys.len() < 2 {
            return Err(NoahError::Grid("need at least 2 nodes per axis".into()));
        }
        let increasing = |a: &[T]| a.windows(2).all(|w| w[0] < w[1]);
        if !increasing(&xs) || !increasing(&ys) {
            return Err(NoahError::Grid(
                "node coordinates must be strictly increasing".into(),
            ));
        }
        if values.is_empty() {
            return Err(NoahError::Grid("no value channels".into()));
        }
        let n = xs.len() * ys.len();
        for ch in &values {
            if ch.len() != n {
                return Err(NoahError::Grid(format!(
                    "channel has {} samples, expected {n}",
                    ch.len()
                )));
            }
            if ch.iter().any(|v| !v.is_finite()) {
                return Err(NoahError::Grid("non-finite sample".into()));
            }
        }
        Ok(Self { xs, ys, values })
    }

    pub fn channels(&self) -> usize {
        self.values.len()
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.xs.len(), self.ys.len())
    }

    pub fn load_csv(path: &Path, channels: usize) -> Result<Self, NoahError> {
        let file = std::fs::File::open(path)?;
        Self::read_csv(file, channels)
    }

    /// Parses rows of `x,y` followed by `channels` values. A non-numeric first
    /// row is treated as a header. Rows may come in any order but must cover
    /// every (x, y) node pair exactly once.
    pub fn read_csv<R: Read>(reader: R, channels: usize) -> Result<Self, NoahError> {
        let mut rdr = csv::ReaderBuilder::new()
            .has_headers(false)
            .trim(csv::Trim::All)
            .from_reader(reader);
        let mut rows: Vec<(f64, f64, Vec<f64>)> = Vec::new();
        for (line, record) in rdr.records().enumerate() {
            let record = record?;
            let parsed: Result<Vec<f64>, _> = record.iter().map(str::parse::<f64>).collect();
            let fields = match parsed {
                Ok(f) => f,
                Err(_) if line == 0 => continue,
                Err(_) => {
                    return Err(NoahError::Grid(format!(
                        "row {}: non-numeric field",
                        line + 1
                    )))
                }
            };
            if fields.len() != 2 + channels {
                return Err(NoahError::Grid(format!(
                    "row {}: expected {} columns, found {}",
                    line + 1,
                    2 + channels,
                    fields.len()
                )));
            }
            rows.push((fields[0], fields[1], fields[2..].to_vec()));
        }
        let mut xs: Vec<f64> = rows.iter().map(|r| r.0).collect();
        let mut ys: Vec<f64> = rows.iter().map(|r| r.1).collect();
        for axis in [&mut xs, &mut ys] {
            axis.sort_by(f64::total_cmp);
            axis.dedup();
        }
        let (nx, ny) = (xs.len(), ys.len());
        if rows.len() != nx * ny {
            return Err(NoahError::Grid(format!(
                "{} rows do not cover a rectangular {nx}x{ny} grid",
                rows.len()
            )));
        }
        let mut values = vec![vec![f64::NAN; nx * ny]; channels];
        let mut seen = vec![false; nx * ny];
        for (x, y, v) in rows {
            let ix = xs
                .binary_search_by(|p| p.total_cmp(&x))
                .expect("x node present");
            let iy = ys
                .binary_search_by(|p| p.total_cmp(&y))
                .expect("y node present");
            let k = iy * nx + ix;
            if seen[k] {
                return Err(NoahError::Grid(format!("duplicate node ({x}, {y})")));
            }
            seen[k] = true;
            for (c, val) in v.into_iter().enumerate() {
                values[c][k] = val;
            }
        }
        let conv = |v: Vec<f64>| v.into_iter().map(T::lit).collect::<Vec<T>>();
        Self::new(conv(xs), conv(ys), values.into_iter().map(conv).collect())
    }

    fn locate(nodes: &[T], v: T) -> (usize, T) {
        let last = nodes.len() - 1;
        if v <= nodes[0] {
            return (0, T::zero());
        }
        if v >= nodes[last] {
            return (last - 1, T::one());
        }
        let upper = nodes.partition_point(|&n| n <= v).min(last);
        let i = upper - 1;
        (i, (v - nodes[i]) / (nodes[i + 1] - nodes[i]))
    }

    /// Bilinear interpolation of `channel` at `(x, y)`; points outside the
    /// node coverage are clamped to the nearest edge.
    pub fn sample(&self, channel: usize, x: T, y: T) -> T {
        let nx = self.xs.len();
        let (ix, tx) = Self::locate(&self.xs, x);
        let (iy, ty) = Self::locate(&self.ys, y);
        let v = &self.values[channel];
        let at = |i: usize, j: usize| v[j * nx + i];
        let one = T::one();
        (one - tx) * (one - ty) * at(ix, iy)
            + tx * (one - ty) * at(ix + 1, iy)
            + (one - tx) * ty * at(ix, iy + 1)
            + tx * ty * at(ix + 1, iy + 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const CSV: &str = "x,y,u,v\n0,0,1,0\n1,0,2,0\n0,1,3,1\n1,1,4,1\n";

    #[test]
    fn reads_and_interpolates() {
        let g = RegularGrid::<f64>::read_csv(CSV.as_bytes(), 2).unwrap();
        assert_eq!(g.shape(), (2, 2));
        assert_eq!(g.sample(0, 0.0, 0.0), 1.0);
        assert_eq!(g.sample(0, 1.0, 1.0), 4.0);
        assert!((g.sample(0, 0.5, 0.5) - 2.5).abs() < 1e-12);
        assert!((g.sample(1, 0.3, 0.5) - 0.5).abs() < 1e-12);
        // outside coverage clamps
        assert_eq!(g.sample(0, -5.0, 9.0), 3.0);
    }

    #[test]
    fn rejects_holes_and_duplicates() {
        let hole = "0,0,1,0\n1,0,2,0\n0,1,3,1\n";
        assert!(RegularGrid::<f64>::read_csv(hole.as_bytes(), 2).is_err());
        let dup = "0,0,1,0\n1,0,2,0\n0,1,3,1\n0,1,3,1\n";
        assert!(RegularGrid::<f64>::read_csv(dup.as_bytes(), 2).is_err());
        let cols = "0,0,1\n1,0,2\n0,1,3\n1,1,4\n";
        assert!(RegularGrid::<f64>::read_csv(cols.as_bytes(), 2).is_err());
    }

    #[test]
    fn nodes_reproduced_on_uneven_grid() {
        let mut csv = String::new();
        let xs = [-2.0, -0.5, 0.1, 2.0];
        let ys = [-2.0, 0.0, 2.0];
        for &x in &xs {
            for &y in &ys {
                csv.push_str(&format!("{x},{y},{}\n", x * 3.0 - y * y));
            }
        }
        let g = RegularGrid::<f64>::read_csv(csv.as_bytes(), 1).unwrap();
        for &x in &xs {
            for &y in &ys {
                assert_eq!(g.sample(0, x, y), x * 3.0 - y * y);
            }
        }
    }
}
