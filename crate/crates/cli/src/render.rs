//! Heat map encoders: binary PPM (P6) and a CSV matrix.

use std::fmt::Write as _;

use gcdmix::HeatmapGrid;

pub type Rgb = [u8; 3];

// Tints of the named colours at the given percentage over white.
pub const WHITE: Rgb = [255, 255, 255];
pub const BLUE_20: Rgb = [204, 204, 255];
pub const BLUE_40: Rgb = [153, 153, 255];
pub const GREEN_20: Rgb = [204, 255, 204];
pub const GREEN_40: Rgb = [153, 255, 153];
pub const ORANGE_30: Rgb = [255, 217, 179];
pub const RED_30: Rgb = [255, 179, 179];
pub const PURPLE_30: Rgb = [236, 179, 198];
pub const CYAN_30: Rgb = [179, 255, 255];
pub const GRAY_80: Rgb = [153, 153, 153];
pub const LIGHT_GRAY: Rgb = [230, 230, 230];

/// Colour for `f = value`. Values 1 through 10 have their own class, larger
/// values share light gray.
pub fn palette(value: u32) -> Rgb {
    match value {
        1 => WHITE,
        2 => BLUE_20,
        3 => BLUE_40,
        4 => GREEN_20,
        5 => GREEN_40,
        6 => ORANGE_30,
        7 => RED_30,
        8 => PURPLE_30,
        9 => CYAN_30,
        10 => GRAY_80,
        _ => LIGHT_GRAY,
    }
}

/// P6 image, one pixel per cell, row 1 on top.
pub fn encode_ppm(grid: &HeatmapGrid) -> Vec<u8> {
    let n = grid.n();
    let header = format!("P6\n{n} {n}\n255\n");
    let mut out = Vec::with_capacity(header.len() + 3 * n * n);
    out.extend_from_slice(header.as_bytes());
    for &v in grid.values() {
        out.extend_from_slice(&palette(v));
    }
    out
}

/// Header `i,1,2,…,n`, then one line per row `i,f(i,1),…,f(i,n)`.
pub fn encode_csv(grid: &HeatmapGrid) -> String {
    let n = grid.n();
    let mut out = String::with_capacity(4 * n * n + 8 * n);
    out.push('i');
    for j in 1..=n {
        write!(out, ",{j}").unwrap();
    }
    out.push('\n');
    for i in 1..=n {
        write!(out, "{i}").unwrap();
        for v in grid.row(i) {
            write!(out, ",{v}").unwrap();
        }
        out.push('\n');
    }
    out
}

/// Inverse of [`encode_csv`].
pub fn decode_csv(text: &str) -> Result<HeatmapGrid, String> {
    let mut lines = text.lines();
    let header = lines.next().ok_or("empty CSV")?;
    let columns: Vec<&str> = header.split(',').collect();
    if columns.first() != Some(&"i") {
        return Err(format!("unexpected header start {:?}", columns.first()));
    }
    let n = columns.len() - 1;
    for (k, c) in columns[1..].iter().enumerate() {
        if c.parse::<usize>() != Ok(k + 1) {
            return Err(format!("header column {} is {c:?}", k + 1));
        }
    }
    let mut values = Vec::with_capacity(n * n);
    for (row, line) in lines.enumerate() {
        let mut fields = line.split(',');
        let label = fields.next().unwrap_or_default();
        if label.parse::<usize>() != Ok(row + 1) {
            return Err(format!("row {} is labelled {label:?}", row + 1));
        }
        let before = values.len();
        for field in fields {
            values.push(
                field
                    .parse::<u32>()
                    .map_err(|e| format!("row {}: {field:?}: {e}", row + 1))?,
            );
        }
        if values.len() - before != n {
            return Err(format!(
                "row {} has {} values, expected {n}",
                row + 1,
                values.len() - before
            ));
        }
    }
    HeatmapGrid::from_values(n, values).map_err(|e| e.to_string())
}

#[cfg(test)]
mod tests {
    use super::*;
    use gcdmix::density::heatmap;

    #[test]
    fn single_cell_is_white() {
        let ppm = encode_ppm(&heatmap(1).unwrap());
        assert_eq!(ppm, b"P6\n1 1\n255\n\xff\xff\xff");
    }

    #[test]
    fn diagonal_two_is_blue() {
        let ppm = encode_ppm(&heatmap(3).unwrap());
        let header = b"P6\n3 3\n255\n".len();
        // (2, 2) is the fifth cell in row-major order.
        assert_eq!(&ppm[header + 3 * 4..header + 3 * 5], &BLUE_20);
        assert_eq!(ppm.len(), header + 27);
    }

    #[test]
    fn csv_round_trip() {
        let grid = heatmap(17).unwrap();
        let text = encode_csv(&grid);
        assert!(text.starts_with("i,1,2,3,"));
        assert_eq!(decode_csv(&text).unwrap(), grid);
    }

    #[test]
    fn csv_rejects_ragged_rows() {
        assert!(decode_csv("i,1,2\n1,1,1\n2,1\n").is_err());
        assert!(decode_csv("x,1\n1,1\n").is_err());
        assert!(decode_csv("").is_err());
    }

    #[test]
    fn palette_classes() {
        assert_eq!(palette(1), WHITE);
        assert_eq!(palette(10), GRAY_80);
        assert_eq!(palette(11), LIGHT_GRAY);
        assert_eq!(palette(500), LIGHT_GRAY);
        let distinct: std::collections::HashSet<Rgb> = (1..=11).map(palette).collect();
        assert_eq!(distinct.len(), 11);
    }
}
