//! Synthetic greyscale scenes with known descriptive structure.

use crate::ingest::{encode_pgm, RegionSpec};

/// Two ovals side by side on a white background, each painted in three
/// concentric intensity bands (core, middle, rim).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoOvals {
    pub width: usize,
    pub height: usize,
    /// Horizontal and vertical semi-axes of each oval.
    pub radii: (i64, i64),
    pub left_bands: [u8; 3],
    pub right_bands: [u8; 3],
    pub background: u8,
}

impl Default for TwoOvals {
    /// Bands that agree after floor division by 8 but not before.
    fn default() -> Self {
        TwoOvals {
            width: 48,
            height: 24,
            radii: (10, 8),
            left_bands: [40, 120, 200],
            right_bands: [46, 124, 203],
            background: 255,
        }
    }
}

impl TwoOvals {
    fn centres(&self) -> [(i64, i64); 2] {
        let (w, h) = (self.width as i64, self.height as i64);
        [(w / 4, h / 2), (3 * w / 4, h / 2)]
    }

    fn shade(&self, x: i64, y: i64) -> u8 {
        let (rx, ry) = self.radii;
        let whole = rx * rx * ry * ry;
        for (c, bands) in self.centres().iter().zip([self.left_bands, self.right_bands]) {
            let (dx, dy) = (x - c.0, y - c.1);
            // scaled squared radius, compared against 0.4² and 0.7² of the rim
            let s = 100 * (dx * dx * ry * ry + dy * dy * rx * rx);
            if s < 16 * whole {
                return bands[0];
            }
            if s < 49 * whole {
                return bands[1];
            }
            if s <= 100 * whole {
                return bands[2];
            }
        }
        self.background
    }

    pub fn pixels(&self) -> Vec<u8> {
        (0..self.height as i64)
            .flat_map(|y| (0..self.width as i64).map(move |x| (x, y)))
            .map(|(x, y)| self.shade(x, y))
            .collect()
    }

    /// Binary PGM bytes.
    pub fn pgm(&self) -> Vec<u8> {
        encode_pgm(self.width, self.height, &self.pixels())
    }

    /// Rectangles `left` and `right` around each centre, inside the ovals.
    pub fn regions(&self) -> Vec<RegionSpec> {
        let (hx, hy) = (self.radii.0 as usize / 2 - 1, self.radii.1 as usize / 4);
        let [l, r] = self.centres();
        let rect = |name: &str, (cx, cy): (i64, i64)| {
            let (cx, cy) = (cx as usize, cy as usize);
            RegionSpec::rect(name, cx - hx, cy - hy, cx + hx, cy + hy)
        };
        vec![rect("left", l), rect("right", r)]
    }

    /// The region file matching [`regions`](Self::regions).
    pub fn regions_json(&self) -> String {
        let map: serde_json::Map<String, serde_json::Value> = self
            .regions()
            .into_iter()
            .map(|r| {
                let shape = serde_json::to_value(&r.shape).expect("shapes serialize");
                (r.name, shape)
            })
            .collect();
        serde_json::to_string_pretty(&map).expect("maps serialize") + "\n"
    }
}
