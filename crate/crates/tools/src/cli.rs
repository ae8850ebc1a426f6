//! Argument definitions, subcommand dispatch and the JSON output records.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use grassmann_core::grassmann::{
    cayley_distance, chart_to_plane, cos_cayley, exp0, geodesic_chart, geodesic_distance0, geodesic_group,
    geodesic_residual, log0, overlap, plucker, stationary_angles_svd, stationary_angles_w, AngleSpectrum, ChartPoint,
    Plane, Signature, TangentCoord,
};
use grassmann_core::loci::{
    cayley_cut_check, cut_locus_report, intersection_dim, is_generic, jumps, schubert_generic_sample,
    schubert_membership, tangent_conjugate_params, v_pl_symbol, CartanDirection, SchubertSymbol, CONJUGATE_TOL,
};
use grassmann_core::Error;
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};
use crate::io::{emit_json, emit_text, parse_matrix, MatrixJson};
use crate::verify::{run_suite, scan_conjugate, write_scan_csv, ScanConfig, SuiteConfig};

#[derive(Debug, Parser)]
#[command(
    name = "grassmann",
    version,
    about = "Geodesics, angles, cut and conjugate loci on G_n(C^(n+m))"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Global {
    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = 42)]
    pub seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = SignatureArg::Compact)]
    pub signature: SignatureArg,
    /// Rows of chart matrices (dimension of the plane).
    #[arg(long, global = true)]
    pub n: Option<usize>,
    /// Columns of chart matrices (codimension of the plane).
    #[arg(long, global = true)]
    pub m: Option<usize>,
    /// Tolerance of the cut-locus or conjugate-point test.
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    /// Write the result here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SignatureArg {
    Compact,
    Noncompact,
}

impl From<SignatureArg> for Signature {
    fn from(s: SignatureArg) -> Self {
        match s {
            SignatureArg::Compact => Signature::Compact,
            SignatureArg::Noncompact => Signature::Noncompact,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum AngleRoute {
    /// Orthonormal bases and an SVD.
    Svd,
    /// Eigenvalues of the chart matrix `W`.
    W,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ReportFormat {
    Text,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Stationary angles between two chart points.
    Angles {
        #[arg(long)]
        z: String,
        /// Second point; `O` when absent.
        #[arg(long)]
        zp: Option<String>,
        #[arg(long, value_enum, default_value_t = AngleRoute::Svd)]
        route: AngleRoute,
    },
    /// Coherent-state overlap `det(1 + ε·Z·Z′*)`.
    Overlap {
        #[arg(long)]
        z: String,
        #[arg(long)]
        zp: Option<String>,
    },
    /// Cayley and geodesic distances between two chart points.
    Dist {
        #[arg(long)]
        z: String,
        #[arg(long)]
        zp: Option<String>,
    },
    /// Geodesic exponential at `O`: normal coordinates `B` to chart coordinates `Z`.
    Exp {
        #[arg(long)]
        b: String,
    },
    /// Geodesic logarithm at `O`: chart coordinates `Z` to normal coordinates `B`.
    Log {
        #[arg(long)]
        z: String,
    },
    /// Points of the geodesic with initial velocity `B`.
    Geodesic {
        #[arg(long)]
        b: String,
        /// Comma-separated times.
        #[arg(long, value_delimiter = ',', required = true)]
        t: Vec<f64>,
        /// Central-difference step of the geodesic-equation residual.
        #[arg(long, default_value_t = 1e-3)]
        step: f64,
    },
    /// Plücker coordinates of a plane.
    Plucker {
        #[command(flatten)]
        plane: PlaneArg,
    },
    /// Cut-locus membership of a plane relative to `O`.
    CutTest {
        #[command(flatten)]
        plane: PlaneArg,
    },
    /// Schubert-variety membership, or a generic sample of a Schubert cell.
    Schubert {
        /// Comma-separated nondecreasing symbol `ω`.
        #[arg(long, value_delimiter = ',', conflicts_with = "v_pl")]
        omega: Option<Vec<usize>>,
        /// Symbol of `V^p_l` given as `p,l`.
        #[arg(long, value_delimiter = ',', num_args = 1, value_name = "P,L")]
        v_pl: Option<Vec<usize>>,
        #[command(flatten)]
        plane: PlaneArg,
        /// Draw a generic point of the cell instead of testing a plane.
        #[arg(long)]
        sample: bool,
    },
    /// Conjugate radii along a flat direction `h`.
    ConjParams {
        /// Comma-separated unit vector.
        #[arg(long, value_delimiter = ',', required = true, allow_hyphen_values = true)]
        h: Vec<f64>,
        #[arg(long, default_value_t = 2)]
        lambda_max: u32,
    },
    /// Dense Jacobian scan along `t·h`, written as CSV.
    ConjScan {
        #[arg(long, value_delimiter = ',', required = true, allow_hyphen_values = true)]
        h: Vec<f64>,
        #[arg(long, default_value_t = 0.0)]
        t_min: f64,
        #[arg(long)]
        t_max: f64,
        #[arg(long, default_value_t = 300)]
        steps: usize,
        #[arg(long, default_value_t = 2)]
        lambda_max: u32,
    },
    /// Seeded property suite.
    Verify {
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        #[arg(long, default_value_t = 2)]
        lambda_max: u32,
        /// Run only these properties.
        #[arg(long, value_delimiter = ',')]
        only: Vec<String>,
        #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
        format: ReportFormat,
        /// Also write the JSON report to this file.
        #[arg(long)]
        json: Option<PathBuf>,
    },
}

/// A plane given by chart coordinates or by a row basis.
#[derive(Debug, Args)]
#[group(required = false, multiple = false)]
pub struct PlaneArg {
    /// Chart coordinates `Z` (`n×m`).
    #[arg(long)]
    pub z: Option<String>,
    /// Row basis (`n×(n+m)`).
    #[arg(long)]
    pub plane: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AnglesOutput {
    pub route: String,
    pub angles: Vec<f64>,
    pub geodesic_length: f64,
    pub cosine_product: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OverlapOutput {
    pub re: f64,
    pub im: f64,
    pub abs: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DistOutput {
    /// Cayley data, compact signature only.
    pub cos_cayley: Option<f64>,
    pub cayley: Option<f64>,
    /// Riemannian distance; on the noncompact side only known from `O`.
    pub geodesic: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeodesicPoint {
    pub t: f64,
    /// Chart coordinates, absent where the geodesic leaves the chart.
    pub z: Option<MatrixJson>,
    pub plane: MatrixJson,
    pub residual: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeodesicOutput {
    pub signature: String,
    pub points: Vec<GeodesicPoint>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PluckerEntry {
    /// 0-based column indices, increasing.
    pub index: Vec<usize>,
    pub value: [f64; 2],
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PluckerOutput {
    pub n: usize,
    pub ambient_dim: usize,
    pub norm: f64,
    pub entries: Vec<PluckerEntry>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CutOutput {
    pub in_cut_locus: bool,
    pub max_angle: f64,
    pub pairing: f64,
    pub cayley: bool,
    pub schubert: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SchubertOutput {
    pub omega: Vec<usize>,
    pub dimension: usize,
    pub member: bool,
    pub generic: bool,
    /// `dim(X ∩ F^j)` at each jump `j`.
    pub intersections: Vec<(usize, usize)>,
    /// Cell coordinates when the plane was sampled.
    pub coords: Option<MatrixJson>,
    pub plane: MatrixJson,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConjParamOutput {
    pub family: String,
    pub p: usize,
    pub q: Option<usize>,
    pub lambda: i32,
    pub t: f64,
    pub multiplicity: usize,
}

struct Ctx<'a> {
    g: &'a Global,
    signature: Signature,
}

impl Ctx<'_> {
    fn shape(&self, cols_extra: bool) -> Option<(usize, usize)> {
        let (n, m) = (self.g.n?, self.g.m?);
        Some((n, if cols_extra { n + m } else { m }))
    }

    fn chart(&self, arg: &str) -> CliResult<ChartPoint> {
        Ok(ChartPoint::new(parse_matrix(arg, self.shape(false))?, self.signature)?)
    }

    fn second_chart(&self, zp: Option<&str>, z: &ChartPoint) -> CliResult<ChartPoint> {
        match zp {
            Some(arg) => self.chart(arg),
            None => Ok(ChartPoint::origin(z.n(), z.m(), self.signature)),
        }
    }

    fn tangent(&self, arg: &str) -> CliResult<TangentCoord> {
        Ok(TangentCoord::new(
            parse_matrix(arg, self.shape(false))?,
            self.signature,
        )?)
    }

    fn plane(&self, arg: &PlaneArg) -> CliResult<Plane> {
        match (&arg.z, &arg.plane) {
            (Some(z), _) => Ok(chart_to_plane(&self.chart(z)?)),
            (None, Some(p)) => Ok(Plane::new(parse_matrix(p, self.shape(true))?)?),
            (None, None) => Err(CliError::Input("give the plane with --z or --plane".into())),
        }
    }

    fn compact_only(&self, what: &str) -> CliResult<()> {
        match self.signature {
            Signature::Compact => Ok(()),
            Signature::Noncompact => Err(CliError::Input(format!(
                "{what} is only defined for the compact signature"
            ))),
        }
    }

    fn direction(&self, h: &[f64]) -> CliResult<(CartanDirection, usize, usize)> {
        let h = CartanDirection::new(h.to_vec())?;
        let n = self.g.n.unwrap_or(h.rank());
        let m = self.g.m.unwrap_or(h.rank());
        Ok((h, n, m))
    }

    fn emit(&self, value: &impl Serialize) -> CliResult<()> {
        emit_json(value, self.g.out.as_deref())
    }
}

fn angles_output(route: &str, spectrum: AngleSpectrum) -> AnglesOutput {
    AnglesOutput {
        route: route.into(),
        geodesic_length: spectrum.geodesic_length(),
        cosine_product: spectrum.cosine_product(),
        angles: spectrum.into_vec(),
    }
}

/// Runs one parsed invocation.
pub fn run(cli: &Cli) -> CliResult<()> {
    let ctx = Ctx {
        g: &cli.global,
        signature: cli.global.signature.into(),
    };
    match &cli.command {
        Command::Angles { z, zp, route } => {
            ctx.compact_only("the stationary-angle spectrum")?;
            let z = ctx.chart(z)?;
            let zp = ctx.second_chart(zp.as_deref(), &z)?;
            let out = match route {
                AngleRoute::Svd => {
                    angles_output("svd", stationary_angles_svd(&chart_to_plane(&zp), &chart_to_plane(&z))?)
                }
                AngleRoute::W => angles_output("w", stationary_angles_w(&zp, &z)?),
            };
            ctx.emit(&out)
        }
        Command::Overlap { z, zp } => {
            let z = ctx.chart(z)?;
            let zp = ctx.second_chart(zp.as_deref(), &z)?;
            let v = overlap(&zp, &z)?;
            ctx.emit(&OverlapOutput {
                re: v.re,
                im: v.im,
                abs: v.norm(),
            })
        }
        Command::Dist { z, zp } => {
            let z = ctx.chart(z)?;
            let zp = ctx.second_chart(zp.as_deref(), &z)?;
            let out = match ctx.signature {
                Signature::Compact => DistOutput {
                    cos_cayley: Some(cos_cayley(&zp, &z)?),
                    cayley: Some(cayley_distance(&zp, &z)?),
                    geodesic: Some(stationary_angles_svd(&chart_to_plane(&zp), &chart_to_plane(&z))?.geodesic_length()),
                },
                Signature::Noncompact if zp.z().frobenius_norm() == 0.0 => DistOutput {
                    cos_cayley: None,
                    cayley: None,
                    geodesic: Some(geodesic_distance0(&z)?),
                },
                Signature::Noncompact => {
                    return Err(CliError::Input(
                        "noncompact distances are only available from O (omit --zp)".into(),
                    ))
                }
            };
            ctx.emit(&out)
        }
        Command::Exp { b } => ctx.emit(&MatrixJson::from_matrix(exp0(&ctx.tangent(b)?)?.z())),
        Command::Log { z } => ctx.emit(&MatrixJson::from_matrix(log0(&ctx.chart(z)?)?.b())),
        Command::Geodesic { b, t, step } => {
            let b = ctx.tangent(b)?;
            let points = t
                .iter()
                .map(|&t| {
                    let z = match geodesic_chart(&b, t) {
                        Ok(z) => Some(z),
                        Err(Error::ChartEscape { .. }) => None,
                        Err(e) => return Err(e.into()),
                    };
                    let residual = match geodesic_residual(&b, t, *step) {
                        Ok(r) => Some(r),
                        Err(Error::Domain(_)) => None,
                        Err(e) => return Err(CliError::from(e)),
                    };
                    Ok(GeodesicPoint {
                        t,
                        z: z.map(|z| MatrixJson::from_matrix(z.z())),
                        plane: MatrixJson::from_matrix(geodesic_group(&b, t)?.basis()),
                        residual,
                    })
                })
                .collect::<CliResult<Vec<_>>>()?;
            ctx.emit(&GeodesicOutput {
                signature: ctx.signature.name().into(),
                points,
            })
        }
        Command::Plucker { plane } => {
            let p = plucker(&ctx.plane(plane)?);
            ctx.emit(&PluckerOutput {
                n: p.n(),
                ambient_dim: p.ambient_dim(),
                norm: p.norm(),
                entries: p
                    .iter()
                    .map(|(index, v)| PluckerEntry {
                        index,
                        value: [v.re, v.im],
                    })
                    .collect(),
            })
        }
        Command::CutTest { plane } => {
            ctx.compact_only("the cut locus")?;
            let p = ctx.plane(plane)?;
            let tol = ctx.g.tol.unwrap_or(1e-9);
            let report = cut_locus_report(&p, tol)?;
            let cut_symbol = v_pl_symbol(p.m(), 1, p.n(), p.m())?;
            ctx.emit(&CutOutput {
                in_cut_locus: report.in_cut_locus,
                max_angle: report.max_angle,
                pairing: report.pairing,
                cayley: cayley_cut_check(&p)?,
                schubert: schubert_membership(&p, &cut_symbol)?,
            })
        }
        Command::Schubert {
            omega,
            v_pl,
            plane,
            sample,
        } => {
            ctx.compact_only("Schubert geometry")?;
            let (n, m) = match (ctx.g.n, ctx.g.m, omega) {
                (n, Some(m), Some(w)) => (n.unwrap_or(w.len()), m),
                (Some(n), Some(m), None) => (n, m),
                _ => {
                    return Err(CliError::Input(
                        "schubert needs --m, and --n unless --omega is given".into(),
                    ))
                }
            };
            let symbol = match (omega, v_pl) {
                (Some(w), _) => SchubertSymbol::new(w.clone(), m)?,
                (None, Some(pl)) if pl.len() == 2 => v_pl_symbol(pl[0], pl[1], n, m)?,
                (None, Some(_)) => return Err(CliError::Input("--v-pl takes two values p,l".into())),
                (None, None) => return Err(CliError::Input("give --omega or --v-pl".into())),
            };
            if symbol.n() != n {
                return Err(Error::ShapeMismatch {
                    expected: (n, m),
                    got: (symbol.n(), m),
                }
                .into());
            }
            let (x, coords) = if *sample {
                let cell = schubert_generic_sample(&symbol, ctx.g.seed);
                (cell.plane(), Some(MatrixJson::from_matrix(&cell.coords)))
            } else {
                (ctx.plane(plane)?, None)
            };
            let intersections = jumps(&symbol)
                .into_iter()
                .map(|j| Ok((j, intersection_dim(&x, symbol.sigma(j))?)))
                .collect::<grassmann_core::Result<Vec<_>>>()?;
            ctx.emit(&SchubertOutput {
                omega: symbol.omega().to_vec(),
                dimension: symbol.dimension(),
                member: schubert_membership(&x, &symbol)?,
                generic: is_generic(&x, &symbol)?,
                intersections,
                coords,
                plane: MatrixJson::from_matrix(x.basis()),
            })
        }
        Command::ConjParams { h, lambda_max } => {
            ctx.compact_only("the conjugate locus")?;
            let (h, n, m) = ctx.direction(h)?;
            let params: Vec<ConjParamOutput> = tangent_conjugate_params(&h, n, m, *lambda_max)?
                .into_iter()
                .map(|c| ConjParamOutput {
                    family: c.family.name().into(),
                    p: c.p,
                    q: c.q,
                    lambda: c.lambda,
                    t: c.t,
                    multiplicity: c.multiplicity,
                })
                .collect();
            ctx.emit(&params)
        }
        Command::ConjScan {
            h,
            t_min,
            t_max,
            steps,
            lambda_max,
        } => {
            let (h, n, m) = ctx.direction(h)?;
            let cfg = ScanConfig {
                n,
                m,
                signature: ctx.signature,
                tol: ctx.g.tol.unwrap_or(CONJUGATE_TOL),
                lambda_max: *lambda_max,
            };
            let rows = scan_conjugate(&h, *t_min, *t_max, *steps, &cfg)?;
            let mut buf = Vec::new();
            write_scan_csv(&rows, &mut buf)?;
            emit_text(
                &String::from_utf8(buf).expect("csv output is UTF-8"),
                ctx.g.out.as_deref(),
            )
        }
        Command::Verify {
            trials,
            lambda_max,
            only,
            format,
            json,
        } => {
            let cfg = SuiteConfig {
                seed: ctx.g.seed,
                trials: *trials,
                n: ctx.g.n.unwrap_or(2),
                m: ctx.g.m.unwrap_or(2),
                lambda_max: *lambda_max,
                only: only.clone(),
                ..SuiteConfig::default()
            };
            let report = run_suite(&cfg)?;
            match format {
                ReportFormat::Text => emit_text(&report.to_text(), ctx.g.out.as_deref())?,
                ReportFormat::Json => emit_text(&(report.to_json() + "\n"), ctx.g.out.as_deref())?,
            }
            if let Some(path) = json {
                std::fs::write(path, report.to_json() + "\n")?;
            }
            if report.pass {
                Ok(())
            } else {
                Err(CliError::PropertyFailure {
                    failed: report.failed(),
                    total: report.properties.len(),
                })
            }
        }
    }
}
