//! JSON function specs, CSV/JSON/SVG output and the demo fixtures.

use std::fmt::Write as _;
use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{SeriesFunction, StructuredFunction};
use crate::solver::{alpha_points, AlphaPoint, FunctionSpec, SolveOptions};
use crate::special::{QSeriesSpec, SeriesFamily};
use crate::theorems::{
    check_first_location, predict_first_location, verify_auto, verify_generic_interlacing, verify_k2_distribution,
    verify_real_power_case, VerificationReport, VerifyOptions,
};
use crate::winding::{sector_census, Census, DEFAULT_QUAD_TOL};

/// Serde helpers writing complex numbers as `{"re": .., "im": ..}`.
pub mod cjson {
    use num_complex::Complex64;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    #[derive(Serialize, Deserialize)]
    #[serde(deny_unknown_fields)]
    struct Obj {
        re: f64,
        #[serde(default)]
        im: f64,
    }

    pub fn serialize<S: Serializer>(z: &Complex64, s: S) -> Result<S::Ok, S::Error> {
        Obj { re: z.re, im: z.im }.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Complex64, D::Error> {
        let o = Obj::deserialize(d)?;
        Ok(Complex64::new(o.re, o.im))
    }

    pub mod many {
        use super::Obj;
        use num_complex::Complex64;
        use serde::{Deserialize, Deserializer, Serialize, Serializer};

        pub fn serialize<S: Serializer>(v: &[Complex64], s: S) -> Result<S::Ok, S::Error> {
            let o: Vec<Obj> = v.iter().map(|z| Obj { re: z.re, im: z.im }).collect();
            o.serialize(s)
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Complex64>, D::Error> {
            Ok(Vec::<Obj>::deserialize(d)?.into_iter().map(|o| Complex64::new(o.re, o.im)).collect())
        }
    }
}

/// Parses `-1-1i`, `2.5`, `i`, `-i`, `1e-3+2i`, `3j`.
pub fn parse_complex(s: &str) -> Result<Complex64> {
    let bad = || Error::InvalidArgument(format!("cannot parse complex number {s:?}"));
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if t.is_empty() {
        return Err(bad());
    }
    let num = |x: &str| -> Result<f64> {
        match x {
            "" | "+" => Ok(1.0),
            "-" => Ok(-1.0),
            _ => x.parse::<f64>().map_err(|_| bad()),
        }
    };
    let Some(body) = t.strip_suffix('i').or_else(|| t.strip_suffix('j')) else {
        return t.parse::<f64>().map(|x| Complex64::new(x, 0.0)).map_err(|_| bad());
    };
    let bytes = body.as_bytes();
    // Split at the last sign that is not the leading one and not an exponent sign.
    let split = (1..bytes.len())
        .rev()
        .find(|&i| (bytes[i] == b'+' || bytes[i] == b'-') && !matches!(bytes[i - 1], b'e' | b'E'));
    match split {
        Some(i) => Ok(Complex64::new(body[..i].parse::<f64>().map_err(|_| bad())?, num(&body[i..])?)),
        None => Ok(Complex64::new(0.0, num(body)?)),
    }
}

/// A series spec: a named family or explicit coefficients.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SeriesSource {
    Family(QSeriesSpec),
    Explicit(SeriesFunction),
}

/// The contents of a spec file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum SpecFile {
    #[serde(alias = "structured")]
    Rational(StructuredFunction),
    Series(SeriesSource),
}

impl SpecFile {
    /// Validates and builds the function.
    pub fn to_function(&self) -> Result<FunctionSpec> {
        match self {
            SpecFile::Rational(f) => {
                f.validate()?;
                Ok(FunctionSpec::Structured(f.clone()))
            }
            SpecFile::Series(SeriesSource::Family(q)) => {
                validate_family(q)?;
                Ok(FunctionSpec::Series(q.to_series()?))
            }
            SpecFile::Series(SeriesSource::Explicit(s)) => {
                if s.coeffs.is_empty() || s.coeffs.iter().all(|c| c.norm() == 0.0) {
                    return Err(Error::ZeroInput("series coefficients"));
                }
                if !(s.trust_radius >= 0.0) || s.k < 2 {
                    return Err(Error::InvalidSpec("trust_radius must be >= 0 and k >= 2".into()));
                }
                Ok(FunctionSpec::Series(s.clone()))
            }
        }
    }

    pub fn family(&self) -> Option<&QSeriesSpec> {
        match self {
            SpecFile::Series(SeriesSource::Family(q)) => Some(q),
            _ => None,
        }
    }
}

fn validate_family(q: &QSeriesSpec) -> Result<()> {
    let m = q.q.norm();
    if !(m > 0.0 && m <= 1.0) {
        return Err(Error::InvalidSpec(format!("q must satisfy 0 < |q| <= 1, got |q| = {m}")));
    }
    if q.family == SeriesFamily::SokalPoly && m >= 1.0 {
        return Err(Error::InvalidSpec("sokal-poly needs |q| < 1".into()));
    }
    if q.family == SeriesFamily::SokalPoly && q.n < 1 {
        return Err(Error::InvalidSpec("sokal-poly needs N >= 1".into()));
    }
    if q.family != SeriesFamily::SokalPoly && q.n < 2 {
        return Err(Error::InvalidSpec("truncation degree N must be at least 2".into()));
    }
    Ok(())
}

/// Byte spans of the top-level members of a JSON object: (key, member start,
/// member end, value start). Returns None on malformed input.
fn top_level_members(s: &str) -> Option<Vec<(String, usize, usize, usize)>> {
    let b = s.as_bytes();
    let skip_ws = |mut i: usize| {
        while i < b.len() && b[i].is_ascii_whitespace() {
            i += 1;
        }
        i
    };
    let string_end = |mut i: usize| {
        // i at the opening quote
        i += 1;
        while i < b.len() {
            match b[i] {
                b'\\' => i += 2,
                b'"' => return Some(i + 1),
                _ => i += 1,
            }
        }
        None
    };
    let value_end = |mut i: usize| -> Option<usize> {
        let mut depth = 0i32;
        while i < b.len() {
            match b[i] {
                b'"' => {
                    i = string_end(i)?;
                    if depth == 0 {
                        return Some(i);
                    }
                    continue;
                }
                b'{' | b'[' => depth += 1,
                b'}' | b']' => {
                    if depth == 0 {
                        return Some(i);
                    }
                    depth -= 1;
                    if depth == 0 {
                        return Some(i + 1);
                    }
                }
                b',' if depth == 0 => return Some(i),
                _ => {}
            }
            i += 1;
        }
        None
    };
    let mut i = skip_ws(0);
    if b.get(i) != Some(&b'{') {
        return None;
    }
    i = skip_ws(i + 1);
    let mut out = Vec::new();
    while i < b.len() && b[i] == b'"' {
        let ke = string_end(i)?;
        let key = serde_json::from_str::<String>(&s[i..ke]).ok()?;
        let c = skip_ws(ke);
        if b.get(c) != Some(&b':') {
            return None;
        }
        let v = skip_ws(c + 1);
        let ve = value_end(v)?;
        out.push((key, i, ve, v));
        i = skip_ws(ve);
        if b.get(i) == Some(&b',') {
            i = skip_ws(i + 1);
        }
    }
    Some(out)
}

fn json_err(e: serde_json::Error) -> Error {
    Error::InvalidSpec(e.to_string())
}

/// Parses and validates a spec. Errors carry the line and column of the
/// offending field, so the concrete struct is read from the text directly
/// with the `type` member blanked out.
pub fn parse_spec_str(s: &str) -> Result<SpecFile> {
    let members = match top_level_members(s) {
        Some(m) => m,
        None => {
            // Let serde report where the syntax breaks.
            serde_json::from_str::<serde_json::Value>(s).map_err(json_err)?;
            return Err(Error::InvalidSpec("spec must be a JSON object".into()));
        }
    };
    let Some((_, start, end, vstart)) = members.iter().find(|m| m.0 == "type").cloned() else {
        return Err(Error::InvalidSpec("missing field `type` (\"rational\" or \"series\")".into()));
    };
    let kind: String = serde_json::from_str(&s[vstart..end]).map_err(|_| Error::InvalidSpec("field `type` must be a string".into()))?;
    // Blank the member and one adjacent comma, keeping newlines so positions survive.
    let mut bytes = s.as_bytes().to_vec();
    let (mut a, mut z) = (start, end);
    let after = s[z..].find(|c: char| !c.is_whitespace()).map(|o| z + o);
    if after.map_or(false, |j| bytes[j] == b',') {
        z = after.unwrap() + 1;
    } else if let Some(j) = s[..a].rfind(|c: char| !c.is_whitespace()) {
        if bytes[j] == b',' {
            a = j;
        }
    }
    for x in &mut bytes[a..z] {
        if *x != b'\n' {
            *x = b' ';
        }
    }
    let rest = String::from_utf8(bytes).map_err(|_| Error::InvalidSpec("spec is not valid UTF-8".into()))?;
    let spec = match kind.as_str() {
        "rational" | "structured" => SpecFile::Rational(serde_json::from_str(&rest).map_err(json_err)?),
        "series" if members.iter().any(|m| m.0 == "family") => {
            SpecFile::Series(SeriesSource::Family(serde_json::from_str(&rest).map_err(json_err)?))
        }
        "series" => SpecFile::Series(SeriesSource::Explicit(serde_json::from_str(&rest).map_err(json_err)?)),
        other => return Err(Error::InvalidSpec(format!("unknown type {other:?}; expected \"rational\" or \"series\""))),
    };
    spec.to_function()?;
    Ok(spec)
}

/// Reads and validates a spec file.
pub fn parse_spec_file(path: &Path) -> Result<SpecFile> {
    let s = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_spec_str(&s).map_err(|e| match e {
        Error::InvalidSpec(m) => Error::InvalidSpec(format!("{}: {m}", path.display())),
        e => e,
    })
}

pub fn spec_to_json(spec: &SpecFile) -> String {
    serde_json::to_string_pretty(spec).expect("spec serializes")
}

/// Tolerance override from `ALPHASECTORS_TOL` (angle tolerance), if set.
pub fn env_tolerance() -> Result<Option<f64>> {
    match std::env::var("ALPHASECTORS_TOL") {
        Ok(v) => {
            let t: f64 = v.trim().parse().map_err(|_| Error::InvalidArgument(format!("ALPHASECTORS_TOL={v:?} is not a number")))?;
            if !(t > 0.0) {
                return Err(Error::InvalidArgument("ALPHASECTORS_TOL must be positive".into()));
            }
            Ok(Some(t))
        }
        Err(_) => Ok(None),
    }
}

/// CSV table, one row per point.
pub fn points_csv(points: &[AlphaPoint]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| Error::Io(e.to_string());
    w.write_record(["index", "re", "im", "modulus", "sector", "boundary", "multiplicity", "residual"]).map_err(io)?;
    for (i, p) in points.iter().enumerate() {
        w.write_record([
            i.to_string(),
            format!("{:.16e}", p.value.re),
            format!("{:.16e}", p.value.im),
            format!("{:.16e}", p.modulus),
            p.sector.s.to_string(),
            p.boundary.to_string(),
            p.multiplicity.to_string(),
            format!("{:.16e}", p.residual),
        ])
        .map_err(io)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Io(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

pub fn write_file(path: &Path, contents: &str) -> Result<()> {
    std::fs::write(path, contents).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

/// Points, the 2k sector rays, and circles through the poles and zeros.
pub fn render_svg(points: &[AlphaPoint], k: u32, spec: &FunctionSpec) -> String {
    let (poles, zeros) = match spec {
        FunctionSpec::Structured(f) => (f.poles(), f.zeros()),
        FunctionSpec::Series(_) => (Vec::new(), Vec::new()),
    };
    let extent = points
        .iter()
        .map(|p| p.modulus)
        .chain(poles.iter().chain(&zeros).map(|z| z.norm()))
        .fold(0.0f64, f64::max)
        .max(1e-300)
        * 1.15;
    const SIZE: f64 = 600.0;
    let c = SIZE / 2.0;
    let scale = c / extent;
    let map = |z: Complex64| (c + z.re * scale, c - z.im * scale);
    let mut s = String::new();
    let _ = writeln!(s, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#);
    let _ = writeln!(s, r##"<rect width="100%" height="100%" fill="white"/>"##);
    for j in 0..2 * k {
        let z = Complex64::from_polar(extent * 1.5, std::f64::consts::PI * j as f64 / k as f64);
        let (x, y) = map(z);
        let _ = writeln!(s, r##"<line x1="{c}" y1="{c}" x2="{x:.3}" y2="{y:.3}" stroke="#999" stroke-width="0.7"/>"##);
    }
    let mut radii: Vec<(f64, &str)> = poles.iter().map(|z| (z.norm(), "#c33")).collect();
    radii.extend(zeros.iter().map(|z| (z.norm(), "#36c")));
    radii.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
    radii.dedup_by(|a, b| (a.0 - b.0).abs() <= 1e-12 * b.0 && a.1 == b.1);
    for (r, col) in radii {
        let _ = writeln!(s, r#"<circle cx="{c}" cy="{c}" r="{:.3}" fill="none" stroke="{col}" stroke-dasharray="4 3"/>"#, r * scale);
    }
    for z in &poles {
        let (x, y) = map(*z);
        let _ = writeln!(s, r##"<path d="M{:.3} {:.3} l6 6 m0 -6 l-6 6" stroke="#c33"/>"##, x - 3.0, y - 3.0);
    }
    for z in &zeros {
        let (x, y) = map(*z);
        let _ = writeln!(s, r##"<circle cx="{x:.3}" cy="{y:.3}" r="3" fill="none" stroke="#36c"/>"##);
    }
    for p in points {
        let (x, y) = map(p.value);
        let r = if p.multiplicity > 1 { 4.5 } else { 3.0 };
        let _ = writeln!(s, r#"<circle cx="{x:.3}" cy="{y:.3}" r="{r}" fill="black"/>"#);
    }
    s.push_str("</svg>\n");
    s
}

/// Which verifier to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TheoremChoice {
    /// `main` or `main2` depending on `alpha`.
    Auto,
    Main,
    Main2,
    First,
    K2,
}

/// Alpha and the sign index `j` (`p = 2j + 1`) the k = 2 verifier should use.
fn k2_parameters(spec: &SpecFile, func: &FunctionSpec, alpha: Complex64) -> Result<(Complex64, i64)> {
    match func {
        FunctionSpec::Structured(f) => {
            if f.k != 2 {
                return Err(Error::InvalidArgument(format!("k2 verification needs k = 2, got k = {}", f.k)));
            }
            Ok((f.effective_alpha(alpha), (f.p - 1).div_euclid(2)))
        }
        FunctionSpec::Series(_) => match spec.family() {
            Some(q) if q.rotate => Ok((q.rotated_alpha()?, -1)),
            _ => Err(Error::InvalidArgument("k2 verification of a series needs a rotated family".into())),
        },
    }
}

/// Verifies `points` (the alpha-points of `spec`, or its zeros for a series).
pub fn verify_points(
    spec: &SpecFile,
    points: &[AlphaPoint],
    alpha: Complex64,
    theorem: TheoremChoice,
    opts: &VerifyOptions,
) -> Result<VerificationReport> {
    let func = spec.to_function()?;
    if theorem == TheoremChoice::K2 {
        let (a, j) = k2_parameters(spec, &func, alpha)?;
        return verify_k2_distribution(points, a, j, opts);
    }
    let f = func
        .as_structured()
        .ok_or_else(|| Error::InvalidArgument("this verifier needs a structured function".into()))?;
    match theorem {
        TheoremChoice::Auto => verify_auto(points, alpha, f, opts),
        TheoremChoice::Main => verify_generic_interlacing(points, alpha, f, opts),
        TheoremChoice::Main2 => verify_real_power_case(points, alpha, f, opts),
        TheoremChoice::First => {
            let fc = predict_first_location(f, alpha, opts.angle_tol)?;
            let mut r = check_first_location(&fc, points, opts);
            r.note(format!("forecast {}", serde_json::to_string(&fc).expect("forecast serializes")));
            Ok(r)
        }
        TheoremChoice::K2 => unreachable!(),
    }
}

/// Per-sector counts of points with `r_in < |z| < r_out`, with multiplicity.
pub fn solver_census(points: &[AlphaPoint], k: u32, r_in: f64, r_out: f64) -> Vec<u32> {
    let mut c = vec![0u32; 2 * k as usize];
    for p in points.iter().filter(|p| p.modulus > r_in && p.modulus < r_out) {
        c[p.sector.s as usize] += p.multiplicity as u32;
    }
    c
}

/// One solve-and-verify job of a demo.
#[derive(Debug, Clone)]
pub struct DemoCase {
    pub label: String,
    pub spec: SpecFile,
    pub alpha: Complex64,
    pub radius: f64,
    pub theorems: Vec<TheoremChoice>,
    /// Winding census annulus.
    pub census: Option<(f64, f64)>,
}

pub const DEMO_NAMES: [&str; 6] = ["fig1", "fig2a", "fig2b", "fig3", "theta", "dexp"];

fn rational(p: i64, k: u32, a: &[f64], b: &[f64]) -> SpecFile {
    SpecFile::Rational(StructuredFunction::rational(p, k, a.to_vec(), b.to_vec()).expect("fixture is valid"))
}

/// The fixtures behind each demo name.
pub fn demo_cases(name: &str) -> Result<Vec<DemoCase>> {
    use std::f64::consts::PI;
    use TheoremChoice::*;
    let e = |t: f64| Complex64::from_polar(1.0, t);
    let case = |label: &str, spec: &SpecFile, alpha: Complex64, radius: f64, th: &[TheoremChoice], census| DemoCase {
        label: label.into(),
        spec: spec.clone(),
        alpha,
        radius,
        theorems: th.to_vec(),
        census,
    };
    Ok(match name {
        "fig1" => {
            let s = rational(-1, 3, &[0.1, 1.0, 4.0], &[1.0, 5.0]);
            vec![case("alpha=-1-i", &s, Complex64::new(-1.0, -1.0), 100.0, &[Main, First], Some((0.01, 10.0)))]
        }
        "fig2a" | "fig2b" => {
            let p = if name == "fig2a" { 1 } else { -1 };
            let s = rational(p, 3, &[1.0, 3.0, 4.0], &[1.0, 5.0]);
            [("alpha=e^(i pi/3)", PI / 3.0), ("alpha=e^(i pi/2)", PI / 2.0), ("alpha=e^(i 2pi/3)", 2.0 * PI / 3.0)]
                .iter()
                .map(|&(l, t)| case(l, &s, e(t), 100.0, &[Auto, First], None))
                .collect()
        }
        "fig3" => {
            let s = rational(1, 2, &[3.0], &[1.0, 5.0]);
            vec![
                case("alpha=i", &s, Complex64::new(0.0, 1.0), 100.0, &[K2, Auto, First], None),
                case("alpha=i/5", &s, Complex64::new(0.0, 0.2), 100.0, &[K2, Auto, First], None),
            ]
        }
        "theta" | "dexp" => {
            let (fam, q, n) = if name == "theta" {
                (SeriesFamily::PartialTheta, Complex64::new(0.0, 0.7), 64)
            } else {
                (SeriesFamily::DisturbedExp, Complex64::new(0.0, 1.0), 40)
            };
            let s = SpecFile::Series(SeriesSource::Family(QSeriesSpec::new(fam, q, n).rotated()));
            vec![case("zeros", &s, Complex64::new(0.0, 0.0), f64::INFINITY, &[K2], None)]
        }
        _ => return Err(Error::InvalidArgument(format!("unknown demo {name:?}; expected one of {}", DEMO_NAMES.join(", ")))),
    })
}

/// Result of running one demo case.
#[derive(Debug, Clone, Serialize)]
pub struct DemoOutcome {
    pub label: String,
    #[serde(with = "cjson")]
    pub alpha: Complex64,
    pub points: Vec<PointRecord>,
    pub reports: Vec<VerificationReport>,
    pub census: Option<CensusComparison>,
    pub passed: bool,
}

/// A point in JSON reports.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PointRecord {
    #[serde(with = "cjson")]
    pub value: Complex64,
    pub modulus: f64,
    pub sector: u32,
    pub boundary: bool,
    pub multiplicity: usize,
    pub residual: f64,
}

impl From<&AlphaPoint> for PointRecord {
    fn from(p: &AlphaPoint) -> Self {
        PointRecord {
            value: p.value,
            modulus: p.modulus,
            sector: p.sector.s,
            boundary: p.boundary,
            multiplicity: p.multiplicity,
            residual: p.residual,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CensusComparison {
    pub winding: Vec<u32>,
    pub solver: Vec<u32>,
    pub r_in: f64,
    pub r_out: f64,
    pub agree: bool,
}

/// Compares the winding census with the solver's over `r_in < |z| < r_out`.
pub fn compare_census(func: &FunctionSpec, alpha: Complex64, points: &[AlphaPoint], r_in: f64, r_out: f64) -> Result<CensusComparison> {
    let k = func.k();
    let w: Census = sector_census(func, alpha, r_in, r_out, k, DEFAULT_QUAD_TOL)?;
    let solver = solver_census(points, k, w.r_in, w.r_out);
    Ok(CensusComparison { agree: w.counts == solver, winding: w.counts, solver, r_in: w.r_in, r_out: w.r_out })
}

/// Solves and verifies one demo case.
pub fn run_case(c: &DemoCase, sopts: &SolveOptions, vopts: &VerifyOptions) -> Result<(Vec<AlphaPoint>, DemoOutcome)> {
    let func = c.spec.to_function()?;
    let radius = c.radius.min(func.trust_radius());
    let points = alpha_points(&func, c.alpha, radius, sopts)?;
    let mut reports = Vec::new();
    for &t in &c.theorems {
        reports.push(verify_points(&c.spec, &points, c.alpha, t, vopts)?);
    }
    let census = match c.census {
        Some((ri, ro)) => Some(compare_census(&func, c.alpha, &points, ri, ro)?),
        None => None,
    };
    let passed = reports.iter().all(|r| r.passed) && census.as_ref().map_or(true, |c| c.agree);
    let out = DemoOutcome {
        label: c.label.clone(),
        alpha: c.alpha,
        points: points.iter().map(PointRecord::from).collect(),
        reports,
        census,
        passed,
    };
    Ok((points, out))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_forms() {
        let c = |s: &str| parse_complex(s).unwrap();
        assert_eq!(c("-1-1i"), Complex64::new(-1.0, -1.0));
        assert_eq!(c("i"), Complex64::new(0.0, 1.0));
        assert_eq!(c("-i"), Complex64::new(0.0, -1.0));
        assert_eq!(c("2.5"), Complex64::new(2.5, 0.0));
        assert_eq!(c("1e-3+2i"), Complex64::new(1e-3, 2.0));
        assert_eq!(c("-2e+1-0.5i"), Complex64::new(-20.0, -0.5));
        assert_eq!(c("0.2i"), Complex64::new(0.0, 0.2));
        assert!(parse_complex("").is_err());
        assert!(parse_complex("1+").is_err());
        assert!(parse_complex("x").is_err());
    }

    #[test]
    fn spec_examples() {
        let s = parse_spec_str(r#"{"type":"rational","p":-1,"k":3,"a":[0.1,1,4],"b":[1,5]}"#).unwrap();
        assert_eq!(s, rational(-1, 3, &[0.1, 1.0, 4.0], &[1.0, 5.0]));
        let s = parse_spec_str(r#"{"type":"series","family":"partial-theta","q":{"re":0,"im":0.7},"N":64}"#).unwrap();
        assert_eq!(s.family().unwrap().n, 64);
        let e = parse_spec_str(r#"{"type":"rational","p":2,"k":4,"a":[1],"b":[]}"#).unwrap_err();
        assert!(matches!(e, Error::NotCoprime { .. }), "{e:?}");
        assert!(parse_spec_str(r#"{"type":"rational","p":1,"k":3,"a":[1],"bogus":1}"#).is_err());
        assert!(parse_spec_str(r#"{"type":"structured","p":1,"k":3,"a":[1]}"#).is_ok());
        assert!(parse_spec_str(r#"{"p":1,"k":3,"a":[1], "type" : "rational" }"#).is_ok());
        assert!(parse_spec_str(r#"{"p":1,"k":3,"a":[1]}"#).is_err());
        assert!(parse_spec_str(r#"{"type":"poly","p":1}"#).is_err());
        assert!(parse_spec_str(r#"[1]"#).is_err());
        let e = parse_spec_str("{\"type\":\"rational\",\n\"p\":\"x\",\"k\":3}").unwrap_err().to_string();
        assert!(e.contains("line 2"), "{e}");
        let s = parse_spec_str(r#"{"type":"series","coeffs":[{"re":1},{"re":-1,"im":0.5}],"trust_radius":"inf"}"#).unwrap();
        assert!(matches!(s, SpecFile::Series(SeriesSource::Explicit(_))));
    }

    #[test]
    fn empty_csv_has_header() {
        assert_eq!(points_csv(&[]).unwrap().trim(), "index,re,im,modulus,sector,boundary,multiplicity,residual");
    }
}
