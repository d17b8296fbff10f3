//! Text export of every analysis product: CSV (lossless float text), SVG
//! plots of scenes with chains and rays, and PGM images of certified
//! rasters.
//!
//! All writers are deterministic string builders; callers handle file I/O.

use std::fmt::Write as _;

use crate::analysis::{ConicKind, ContinuityRow, StructureReport};
use crate::asymptotics::Ray;
use crate::certification::{Raster, RasterClass};
use crate::extraction::PolyChain;
use crate::geometry::Primitive;
use crate::scene::Scene;

/// Lossless float formatting for CSV: 17 significant digits in scientific
/// notation, `nan` for NaN, and `-0.0` folded onto `0.0` so equal values
/// print identically.
pub fn fmt_f64(v: f64) -> String {
    if v.is_nan() {
        return "nan".to_string();
    }
    let v = if v == 0.0 { 0.0 } else { v };
    format!("{v:.16e}")
}

/// `chain_id,seq,x,y,residual` rows for every vertex of every chain.
pub fn chains_csv(chains: &[PolyChain]) -> String {
    let mut out = String::from("chain_id,seq,x,y,residual\n");
    for (chain_id, chain) in chains.iter().enumerate() {
        for (seq, (v, r)) in chain.vertices.iter().zip(&chain.residuals).enumerate() {
            let _ = writeln!(
                out,
                "{chain_id},{seq},{},{},{}",
                fmt_f64(v.x),
                fmt_f64(v.y),
                fmt_f64(*r)
            );
        }
    }
    out
}

/// `ray_id,origin_x,origin_y,dir_x,dir_y` rows.
pub fn rays_csv(rays: &[Ray]) -> String {
    let mut out = String::from("ray_id,origin_x,origin_y,dir_x,dir_y\n");
    for (ray_id, ray) in rays.iter().enumerate() {
        let _ = writeln!(
            out,
            "{ray_id},{},{},{},{}",
            fmt_f64(ray.origin.x),
            fmt_f64(ray.origin.y),
            fmt_f64(ray.direction.x),
            fmt_f64(ray.direction.y)
        );
    }
    out
}

/// `ray_id,t,s` rows from flattened deviation samples.
pub fn profile_csv(rows: &[(usize, f64, f64)]) -> String {
    let mut out = String::from("ray_id,t,s\n");
    for (ray_id, t, s) in rows {
        let _ = writeln!(out, "{ray_id},{},{}", fmt_f64(*t), fmt_f64(*s));
    }
    out
}

/// One point-certification outcome; `status` is `ok`, `inside_hull`, or
/// `no_separation`, with NaN certificate fields where the attempt failed.
#[derive(Debug, Clone)]
pub struct CertifyRow {
    pub x: f64,
    pub y: f64,
    pub status: String,
    pub eps: f64,
    pub d: f64,
    pub alpha: f64,
    pub radius: f64,
}

/// `x,y,status,eps,d,alpha,radius` rows.
pub fn certify_csv(rows: &[CertifyRow]) -> String {
    let mut out = String::from("x,y,status,eps,d,alpha,radius\n");
    for r in rows {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{}",
            fmt_f64(r.x),
            fmt_f64(r.y),
            r.status,
            fmt_f64(r.eps),
            fmt_f64(r.d),
            fmt_f64(r.alpha),
            fmt_f64(r.radius)
        );
    }
    out
}

/// `x,y,classification,eps,d,alpha,radius` rows, one per raster cell in
/// storage order (bottom row first).
pub fn raster_csv(raster: &Raster) -> String {
    let mut out = String::from("x,y,classification,eps,d,alpha,radius\n");
    for c in &raster.cells {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{}",
            fmt_f64(c.center.x),
            fmt_f64(c.center.y),
            c.classification.as_str(),
            fmt_f64(c.eps),
            fmt_f64(c.d),
            fmt_f64(c.alpha),
            fmt_f64(c.radius)
        );
    }
    out
}

/// `delta,dh_focals,dh_midsets,status` rows.
pub fn continuity_csv(rows: &[ContinuityRow]) -> String {
    let mut out = String::from("delta,dh_focals,dh_midsets,status\n");
    for r in rows {
        let _ = writeln!(
            out,
            "{},{},{},{}",
            fmt_f64(r.delta),
            fmt_f64(r.dh_focals),
            fmt_f64(r.dh_midsets),
            r.status.as_str()
        );
    }
    out
}

/// One conic-reduction verdict for a named scene.
#[derive(Debug, Clone)]
pub struct ConicRow {
    pub scene: String,
    pub kind: ConicKind,
    pub constant: f64,
    pub residual: f64,
    /// Residual bound the verdict uses.
    pub limit: f64,
    pub pass: bool,
}

/// `scene,kind,constant,residual,limit,pass` rows.
pub fn conics_csv(rows: &[ConicRow]) -> String {
    let mut out = String::from("scene,kind,constant,residual,limit,pass\n");
    for r in rows {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{}",
            r.scene,
            r.kind.as_str(),
            fmt_f64(r.constant),
            fmt_f64(r.residual),
            fmt_f64(r.limit),
            r.pass
        );
    }
    out
}

/// `component_id,closed,vertex_count,min_dist_a,min_dist_b,interior_violations`
/// rows.
pub fn report_csv(report: &StructureReport) -> String {
    let mut out =
        String::from("component_id,closed,vertex_count,min_dist_a,min_dist_b,interior_violations\n");
    for c in &report.components {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{}",
            c.component_id,
            c.closed,
            c.vertex_count,
            fmt_f64(c.min_dist_a),
            fmt_f64(c.min_dist_b),
            c.interior_violations
        );
    }
    out
}

fn coord(v: f64) -> String {
    format!("{v:.6}")
}

/// SVG plot of a scene: bounding circle, both focal sets, extracted chains,
/// and (optionally) asymptotic rays as the only dashed elements. The world
/// frame is y-up; the document flips once via a group transform.
pub fn svg_document(scene: &Scene, chains: &[PolyChain], rays: &[Ray]) -> String {
    let r = scene.radius;
    let sw = r / 400.0;
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="{} {} {} {}">"#,
        coord(-r),
        coord(-r),
        coord(2.0 * r),
        coord(2.0 * r)
    );
    let _ = writeln!(out, r#"<g transform="scale(1,-1)">"#);
    let _ = writeln!(
        out,
        r##"<circle cx="0" cy="0" r="{}" fill="none" stroke="#bbbbbb" stroke-width="{}"/>"##,
        coord(r),
        coord(sw)
    );
    focal_svg(&mut out, scene, true, sw);
    focal_svg(&mut out, scene, false, sw);
    for chain in chains {
        if chain.vertices.is_empty() {
            continue;
        }
        let mut d = String::new();
        for (i, v) in chain.vertices.iter().enumerate() {
            let cmd = if i == 0 { 'M' } else { 'L' };
            let _ = write!(d, "{cmd}{} {} ", coord(v.x), coord(v.y));
        }
        if chain.closed {
            d.push('Z');
        }
        let _ = writeln!(
            out,
            r##"<path d="{}" fill="none" stroke="#111111" stroke-width="{}"/>"##,
            d.trim_end(),
            coord(sw * 1.5)
        );
    }
    for ray in rays {
        let tip_x = ray.origin.x + 2.0 * r * ray.direction.x;
        let tip_y = ray.origin.y + 2.0 * r * ray.direction.y;
        let _ = writeln!(
            out,
            r##"<line x1="{}" y1="{}" x2="{}" y2="{}" stroke="#777777" stroke-width="{}" stroke-dasharray="{} {}"/>"##,
            coord(ray.origin.x),
            coord(ray.origin.y),
            coord(tip_x),
            coord(tip_y),
            coord(sw),
            coord(8.0 * sw),
            coord(5.0 * sw)
        );
    }
    let _ = writeln!(out, "</g>");
    let _ = writeln!(out, "</svg>");
    out
}

fn focal_svg(out: &mut String, scene: &Scene, first: bool, sw: f64) {
    let (focal, color) = if first {
        (&scene.a, "#cc3333")
    } else {
        (&scene.b, "#3366cc")
    };
    let dot_r = 3.0 * sw;
    for p in &focal.primitives {
        match p {
            Primitive::Dot(p) => {
                let _ = writeln!(
                    out,
                    r#"<circle cx="{}" cy="{}" r="{}" fill="{color}"/>"#,
                    coord(p.x),
                    coord(p.y),
                    coord(dot_r)
                );
            }
            Primitive::Segment { p, q } => {
                let _ = writeln!(
                    out,
                    r#"<line x1="{}" y1="{}" x2="{}" y2="{}" stroke="{color}" stroke-width="{}"/>"#,
                    coord(p.x),
                    coord(p.y),
                    coord(q.x),
                    coord(q.y),
                    coord(2.0 * sw)
                );
            }
            Primitive::Circle { center, radius } => {
                let _ = writeln!(
                    out,
                    r#"<circle cx="{}" cy="{}" r="{}" fill="none" stroke="{color}" stroke-width="{}"/>"#,
                    coord(center.x),
                    coord(center.y),
                    coord(*radius),
                    coord(2.0 * sw)
                );
            }
            Primitive::Disk { center, radius } => {
                let _ = writeln!(
                    out,
                    r#"<circle cx="{}" cy="{}" r="{}" fill="{color}" fill-opacity="0.35" stroke="{color}" stroke-width="{}"/>"#,
                    coord(center.x),
                    coord(center.y),
                    coord(*radius),
                    coord(2.0 * sw)
                );
            }
            Primitive::PolyLine { vertices, closed } => {
                let mut d = String::new();
                for (i, v) in vertices.iter().enumerate() {
                    let cmd = if i == 0 { 'M' } else { 'L' };
                    let _ = write!(d, "{cmd}{} {} ", coord(v.x), coord(v.y));
                }
                if *closed {
                    d.push('Z');
                }
                let _ = writeln!(
                    out,
                    r#"<path d="{}" fill="none" stroke="{color}" stroke-width="{}"/>"#,
                    d.trim_end(),
                    coord(2.0 * sw)
                );
            }
        }
    }
}

/// Plain-text PGM (P2) image of a certified raster: miss 0, unresolved 128,
/// hit 255, top image row first, at most 17 values per line.
pub fn raster_pgm(raster: &Raster) -> String {
    let n = raster.grid_n;
    let mut out = format!("P2\n{n} {n}\n255\n");
    let mut line = Vec::with_capacity(17);
    for iy in (0..n).rev() {
        for ix in 0..n {
            let v = match raster.cell(ix, iy).classification {
                RasterClass::Miss => 0u8,
                RasterClass::Unresolved => 128,
                RasterClass::Hit => 255,
            };
            line.push(v.to_string());
            if line.len() == 17 {
                let _ = writeln!(out, "{}", line.join(" "));
                line.clear();
            }
        }
        // Image rows never share a text line.
        if !line.is_empty() {
            let _ = writeln!(out, "{}", line.join(" "));
            line.clear();
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::RowStatus;
    use crate::certification::RasterCell;
    use crate::geometry::{Point2, Vec2};

    #[test]
    fn fmt_f64_is_lossless_and_canonical() {
        for v in [
            0.0,
            1.0,
            -1.0,
            std::f64::consts::PI,
            1.0 / 3.0,
            6.62607015e-34,
            -2.5e300,
            f64::MIN_POSITIVE,
        ] {
            let s = fmt_f64(v);
            assert_eq!(s.parse::<f64>().unwrap().to_bits(), v.to_bits(), "{s}");
        }
        assert_eq!(fmt_f64(-0.0), fmt_f64(0.0));
        assert_eq!(fmt_f64(f64::NAN), "nan");
    }

    #[test]
    fn chains_csv_layout() {
        let chains = vec![PolyChain {
            vertices: vec![Point2::new(0.5, -1.0), Point2::new(0.5, 1.0)],
            closed: false,
            residuals: vec![0.0, 0.25],
        }];
        let csv = chains_csv(&chains);
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "chain_id,seq,x,y,residual");
        assert_eq!(
            lines[1],
            "0,0,5.0000000000000000e-1,-1.0000000000000000e0,0.0000000000000000e0"
        );
        assert_eq!(lines.len(), 3);
    }

    #[test]
    fn csv_headers_are_stable() {
        assert!(rays_csv(&[]).starts_with("ray_id,origin_x,origin_y,dir_x,dir_y\n"));
        assert!(profile_csv(&[]).starts_with("ray_id,t,s\n"));
        assert!(certify_csv(&[]).starts_with("x,y,status,eps,d,alpha,radius\n"));
        assert!(continuity_csv(&[]).starts_with("delta,dh_focals,dh_midsets,status\n"));
        assert!(conics_csv(&[]).starts_with("scene,kind,constant,residual,limit,pass\n"));
        assert!(report_csv(&StructureReport { components: vec![] })
            .starts_with("component_id,closed,vertex_count,min_dist_a,min_dist_b,interior_violations\n"));
    }

    #[test]
    fn continuity_csv_prints_nan_rows() {
        let rows = vec![ContinuityRow {
            delta: 0.5,
            dh_focals: 0.5,
            dh_midsets: f64::NAN,
            status: RowStatus::Rejected,
        }];
        let csv = continuity_csv(&rows);
        assert!(csv.lines().nth(1).unwrap().ends_with(",nan,rejected"));
    }

    #[test]
    fn svg_marks_only_rays_dashed() {
        let scene = crate::demo::two_dots();
        let chains = vec![PolyChain {
            vertices: vec![Point2::new(0.0, -4.0), Point2::new(0.0, 4.0)],
            closed: false,
            residuals: vec![0.0, 0.0],
        }];
        let rays = vec![
            Ray {
                origin: Point2::new(0.0, 0.0),
                direction: Vec2::new(0.0, 1.0),
            },
            Ray {
                origin: Point2::new(0.0, 0.0),
                direction: Vec2::new(0.0, -1.0),
            },
        ];
        let svg = svg_document(&scene, &chains, &rays);
        assert!(svg.contains(r#"viewBox="-4.000000 -4.000000 8.000000 8.000000""#));
        assert!(svg.contains(r#"<g transform="scale(1,-1)">"#));
        assert_eq!(svg.matches("stroke-dasharray").count(), 2);
        assert_eq!(svg.matches("<path").count(), 1);
        // Without rays, nothing is dashed.
        let svg = svg_document(&scene, &chains, &[]);
        assert_eq!(svg.matches("stroke-dasharray").count(), 0);
    }

    #[test]
    fn pgm_layout_is_top_row_first() {
        let mk = |ix: u32, iy: u32, class| RasterCell {
            ix,
            iy,
            center: Point2::new(0.0, 0.0),
            half_width: 0.5,
            classification: class,
            eps: f64::NAN,
            d: f64::NAN,
            alpha: f64::NAN,
            radius: f64::NAN,
        };
        let raster = Raster {
            grid_n: 2,
            radius: 1.0,
            cells: vec![
                mk(0, 0, RasterClass::Miss),
                mk(1, 0, RasterClass::Hit),
                mk(0, 1, RasterClass::Unresolved),
                mk(1, 1, RasterClass::Miss),
            ],
        };
        assert_eq!(raster_pgm(&raster), "P2\n2 2\n255\n128 0\n0 255\n");
    }

    #[test]
    fn pgm_wraps_long_rows() {
        let n = 20u32;
        let cells = (0..n * n)
            .map(|k| RasterCell {
                ix: k % n,
                iy: k / n,
                center: Point2::new(0.0, 0.0),
                half_width: 0.5,
                classification: RasterClass::Miss,
                eps: f64::NAN,
                d: f64::NAN,
                alpha: f64::NAN,
                radius: f64::NAN,
            })
            .collect();
        let raster = Raster {
            grid_n: n,
            radius: 1.0,
            cells,
        };
        let pgm = raster_pgm(&raster);
        for line in pgm.lines().skip(3) {
            assert!(line.split(' ').count() <= 17);
        }
    }
}
