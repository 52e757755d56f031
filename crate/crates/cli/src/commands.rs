use ckgeom::io::{parse_columns, parse_plane, parse_vector, plane_columns, TransformDoc, VolumeDoc};
use ckgeom::metric::{
    angle, distance, law_residuals, measure_triangle, projective_distance, right_triangle_residuals,
    triangle_from_sas, LawReport, Measure, TriangleMeasurements,
};
use ckgeom::sample::random_triangle;
use ckgeom::transform::{random_transform, validate, ValidationReport};
use ckgeom::volume::{mc_volume, VolumeEstimate};
use ckgeom::{normalize_point, GOrthoTransform, Generator, MPlane, Space};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{CliError, CliResult};
use crate::input::{self, load};
use crate::{AngleArgs, Cli, Command, DistArgs, Global, Output, TransformArgs, TriangleArgs, VolumeArgs};

pub const DEFAULT_SAMPLES: usize = 1_000_000;
const MAX_TRIANGLE_DRAWS: usize = 10_000;

/// An error, possibly with a report that should still reach stdout.
pub struct Failure {
    pub error: CliError,
    pub report: Option<String>,
}

impl From<CliError> for Failure {
    fn from(error: CliError) -> Self {
        Self { error, report: None }
    }
}

pub fn run(cli: &Cli) -> Result<String, Failure> {
    let g = &cli.global;
    match &cli.command {
        Command::Dist(a) => Ok(dist(g, a)?),
        Command::Angle(a) => Ok(angle_cmd(g, a)?),
        Command::Triangle(a) => Ok(triangle(g, a)?),
        Command::Volume(a) => Ok(volume(g, a)?),
        Command::Transform(a) => transform(g, a),
    }
}

fn json<T: Serialize>(value: &T) -> CliResult<String> {
    Ok(serde_json::to_string(value)? + "\n")
}

fn csv_rows<T: Serialize>(rows: &[T]) -> CliResult<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r)?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Write(e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
}

fn json_only(g: &Global, what: &str) -> CliResult<()> {
    match g.output {
        Output::Json => Ok(()),
        Output::Csv => Err(CliError::Usage(format!("{what} has no CSV form; use --output json"))),
    }
}

fn emit_measure(g: &Global, m: &Measure) -> CliResult<String> {
    match g.output {
        Output::Json => json(m),
        Output::Csv => csv_rows(std::slice::from_ref(m)),
    }
}

#[derive(Serialize)]
struct PairRow {
    row: usize,
    phi: Option<f64>,
    level: Option<usize>,
    kind: Option<String>,
    error: Option<String>,
}

fn dist(g: &Global, a: &DistArgs) -> CliResult<String> {
    let sp = input::space(g.space.as_deref())?;
    let measure = |p: &[f64], q: &[f64]| -> ckgeom::Result<Measure> {
        let (p, q) = (normalize_point(&sp, p, g.tol)?, normalize_point(&sp, q, g.tol)?);
        if a.projective {
            projective_distance(&sp, &p, &q, g.tol)
        } else {
            distance(&sp, &p, &q, g.tol)
        }
    };
    let Some(path) = &a.pairs else {
        let p = parse_vector(a.p.as_deref().unwrap_or_default())?;
        let q = parse_vector(a.q.as_deref().unwrap_or_default())?;
        return emit_measure(g, &measure(&p, &q)?);
    };

    let text = load(path)?;
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let width = 2 * (sp.dim() + 1);
    let mut rows = Vec::new();
    for (i, record) in reader.records().enumerate() {
        let record = record?;
        let values: Result<Vec<f64>, _> = record.iter().map(str::parse::<f64>).collect();
        let values = match values {
            Ok(v) => v,
            // a header line
            Err(_) if i == 0 => continue,
            Err(_) => return Err(CliError::Usage(format!("row {i}: non-numeric field"))),
        };
        if values.len() != width {
            return Err(CliError::Usage(format!("row {i}: expected {width} numbers, got {}", values.len())));
        }
        let (p, q) = values.split_at(width / 2);
        rows.push(match measure(p, q) {
            Ok(m) => PairRow {
                row: i,
                phi: Some(m.value),
                level: Some(m.level),
                kind: Some(if m.is_real() { "real" } else { "imaginary" }.into()),
                error: None,
            },
            Err(e) => PairRow { row: i, phi: None, level: None, kind: None, error: Some(e.kind().into()) },
        });
    }
    match g.output {
        Output::Json => json(&rows),
        Output::Csv => csv_rows(&rows),
    }
}

fn angle_cmd(g: &Global, a: &AngleArgs) -> CliResult<String> {
    let sp = input::space(g.space.as_deref())?;
    let x = parse_plane(&sp, &load(&a.x)?, g.tol)?;
    let y = parse_plane(&sp, &load(&a.y)?, g.tol)?;
    emit_measure(g, &angle(&sp, &x, &y, g.tol)?)
}

#[derive(Serialize)]
struct TriangleOutput {
    signature: String,
    b: f64,
    alpha: f64,
    c: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    rejected: Option<usize>,
    vertices: Vec<Vec<f64>>,
    measurements: TriangleMeasurements,
    #[serde(skip_serializing_if = "Option::is_none")]
    laws: Option<LawReport>,
}

fn triangle(g: &Global, a: &TriangleArgs) -> CliResult<String> {
    json_only(g, "triangle")?;
    let sp = input::space(g.space.as_deref())?;
    if let Some(legs) = &a.legs {
        let legs = input::list::<f64>(legs, 2, "--legs")?;
        return json(&right_triangle_residuals(&sp, legs[0], legs[1], g.tol)?);
    }
    let (b, alpha, c, seed, rejected, tri, m) = if let Some(seed) = a.random {
        let seed = seed.or(g.seed).unwrap_or(0);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let d = random_triangle(&sp, &mut rng, g.tol, MAX_TRIANGLE_DRAWS)?;
        (d.b, d.alpha, d.c, Some(seed), Some(d.rejected), d.triangle, d.measurements)
    } else {
        let (Some(b), Some(alpha), Some(c)) = (a.b, a.alpha, a.c) else {
            return Err(CliError::Usage("give --b, --alpha and --c, or --random, or --legs".into()));
        };
        let tri = triangle_from_sas(&sp, b, alpha, c, g.tol)?;
        let m = measure_triangle(&sp, &tri, g.tol)?;
        (b, alpha, c, None, None, tri, m)
    };
    let out = TriangleOutput {
        signature: sp.signature().to_string(),
        b,
        alpha,
        c,
        seed,
        rejected,
        vertices: tri.vertices().iter().map(|v| v.coords().to_vec()).collect(),
        measurements: m,
        laws: a.laws.then(|| law_residuals(&sp, &m)),
    };
    json(&out)
}

#[derive(Serialize)]
struct VolumeOutput {
    signature: String,
    #[serde(flatten)]
    estimate: VolumeEstimate,
}

fn volume(g: &Global, a: &VolumeArgs) -> CliResult<String> {
    let doc = VolumeDoc::parse(&load(&a.vertices)?)?;
    let sp = match (&g.space, &doc.signature) {
        (Some(s), _) => input::space(Some(s))?,
        (None, Some(sig)) => Space::new(sig.clone()),
        (None, None) => return Err(CliError::Usage("--space is required".into())),
    };
    let samples = a.samples.or(doc.samples).unwrap_or(DEFAULT_SAMPLES);
    let seed = g.seed.or(doc.seed).unwrap_or(0);
    let est = mc_volume(&sp, &doc.simplex(&sp, g.tol)?, samples, seed)?;
    match g.output {
        Output::Json => json(&VolumeOutput { signature: sp.signature().to_string(), estimate: est }),
        Output::Csv => csv_rows(&[est]),
    }
}

#[derive(Serialize)]
struct TransformOutput {
    signature: String,
    #[serde(flatten)]
    transform: TransformDoc,
    #[serde(skip_serializing_if = "Option::is_none")]
    validation: Option<ValidationReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    points: Option<Vec<Vec<f64>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    planes: Option<Vec<Vec<Vec<f64>>>>,
}

#[derive(serde::Deserialize)]
#[serde(untagged)]
enum Entities {
    Point(Vec<f64>),
    Points(Vec<Vec<f64>>),
    Mixed {
        #[serde(default)]
        points: Vec<Vec<f64>>,
        #[serde(default)]
        planes: Vec<serde_json::Value>,
    },
}

fn build_transform(sp: &Space, g: &Global, a: &TransformArgs) -> CliResult<GOrthoTransform> {
    if let Some(seed) = a.random {
        return Ok(random_transform(sp, seed.or(g.seed).unwrap_or(0)));
    }
    if !a.givens.is_empty() {
        let word = a
            .givens
            .iter()
            .map(|text| {
                let parts: Vec<&str> = text.split(',').map(str::trim).collect();
                let bad = || CliError::Usage(format!("--givens expects i,j,t, got {text:?}"));
                let [i, j, t] = parts[..] else { return Err(bad()) };
                Ok(Generator::Givens {
                    i: i.parse().map_err(|_| bad())?,
                    j: j.parse().map_err(|_| bad())?,
                    t: t.parse().map_err(|_| bad())?,
                })
            })
            .collect::<CliResult<Vec<_>>>()?;
        return Ok(GOrthoTransform::from_word(sp, &word)?);
    }
    if let Some(m) = &a.matrix {
        let doc: TransformDoc = serde_json::from_str(&load(m)?)?;
        if doc.n != sp.dim() {
            return Err(ckgeom::Error::DimensionMismatch { expected: sp.dim(), got: doc.n }.into());
        }
        return Ok(doc.to_transform(sp, g.tol)?);
    }
    Err(CliError::Usage("give --random, --givens or --matrix".into()))
}

fn transform(g: &Global, a: &TransformArgs) -> Result<String, Failure> {
    json_only(g, "transform")?;
    let sp = input::space(g.space.as_deref())?;
    let t = build_transform(&sp, g, a)?;
    let validation = a.validate.then(|| validate(&sp, t.matrix(), g.tol.max(1e-9)));

    let (mut points, mut planes) = (None, None);
    if let Some(apply) = &a.apply {
        let text = load(apply)?;
        let entities: Entities = match serde_json::from_str(&text) {
            Ok(e) => e,
            Err(e) => match parse_vector(&text) {
                Ok(p) => Entities::Point(p),
                Err(_) => return Err(CliError::from(e).into()),
            },
        };
        let (raw_points, raw_planes) = match entities {
            Entities::Point(p) => (vec![p], vec![]),
            Entities::Points(ps) => (ps, vec![]),
            Entities::Mixed { points, planes } => (points, planes),
        };
        let mapped = raw_points
            .iter()
            .map(|p| {
                let x = normalize_point(&sp, p, g.tol)?;
                Ok(t.apply_point(&x)?.coords().to_vec())
            })
            .collect::<CliResult<Vec<_>>>()?;
        let mapped_planes = raw_planes
            .iter()
            .map(|v| {
                let cols = ckgeom::io::columns_to_matrix(&parse_columns(&v.to_string())?)?;
                let plane = MPlane::from_columns(&sp, cols, g.tol)?;
                Ok(plane_columns(&t.apply_plane(&sp, &plane)?))
            })
            .collect::<CliResult<Vec<_>>>()?;
        points = Some(mapped);
        if !mapped_planes.is_empty() {
            planes = Some(mapped_planes);
        }
    }

    let failed = validation.as_ref().filter(|v| !v.passed).map(|v| v.worst_residual);
    let text = json(&TransformOutput {
        signature: sp.signature().to_string(),
        transform: TransformDoc::from_transform(&t),
        validation,
        points,
        planes,
    })?;
    match failed {
        Some(worst) => Err(Failure {
            error: CliError::Failed(format!("matrix is not generalized orthogonal (worst residual {worst:e})")),
            report: Some(text),
        }),
        None => Ok(text),
    }
}
