use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use tangram_core::canon::parse_region_key;
use tangram_core::catalog::{coverage, ShapeNumbering};
use tangram_core::render::{render_shape_catalog, render_sheet_svg, render_solution_svg, RenderStyle};
use tangram_core::strips::{cut_edges, twin_of, verify_strip_theorem, CutKind, StripTargets};
use tangram_core::{
    dedupe, enumerate_partitions, region_key, tan_set, Catalog, CountMode, Region, Solution, TanSetKind,
};

use crate::args::{CensusArgs, Cli, Command, RenderArgs, ShapeArgs, SolveArgs, StripsArgs, VerifyArgs};
use crate::document::SolutionDocument;
use crate::error::CliError;
use crate::verify::run_verify;

const SHEET_COLUMNS: usize = 6;

/// A shape picked on the command line.
#[derive(Debug, Clone)]
pub struct Target {
    /// `J07`, or `custom` for a region outside the census.
    pub label: String,
    pub number: Option<u8>,
    pub region: Region,
}

pub fn load_catalog(numbering: Option<&Path>) -> Result<Catalog, CliError> {
    match numbering {
        None => Ok(Catalog::with_default_numbering()?),
        Some(path) => {
            let text = fs::read_to_string(path).map_err(CliError::io(path))?;
            Ok(Catalog::new(&ShapeNumbering::parse(&text)?)?)
        }
    }
}

/// Accepts `7`, `J07`, `j7` or a region key in any orientation.
pub fn resolve_shape(catalog: &Catalog, query: &str) -> Result<Target, CliError> {
    let unknown = || CliError::UnknownShape(query.to_string());
    if query.contains(':') {
        let key = region_key(&parse_region_key(query).map_err(|_| unknown())?);
        return Ok(match catalog.shape_by_key(&key) {
            Some(e) => Target { label: e.label(), number: e.number, region: e.region.clone() },
            None => Target {
                label: "custom".to_string(),
                number: None,
                region: parse_region_key(&key).map_err(|_| unknown())?,
            },
        });
    }
    let digits = query.strip_prefix(['J', 'j']).unwrap_or(query);
    let n: u8 = digits.parse().map_err(|_| unknown())?;
    let e = catalog.shape_by_number(n).map_err(|_| unknown())?;
    Ok(Target { label: e.label(), number: e.number, region: e.region.clone() })
}

fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).map_err(CliError::io(dir))?;
    }
    fs::write(path, contents).map_err(CliError::io(path))
}

fn out<W: Write + ?Sized>(w: &mut W, line: std::fmt::Arguments<'_>) -> Result<(), CliError> {
    writeln!(w, "{line}").map_err(CliError::io("<stdout>"))
}

fn style_for(mode: CountMode) -> RenderStyle {
    RenderStyle { colored: mode == CountMode::Colored, ..RenderStyle::default() }
}

fn build_document(target: &Target, args: &ShapeArgs) -> Result<SolutionDocument, CliError> {
    Ok(SolutionDocument::build(target.number, &target.region, args.set.into(), args.mode.into())?)
}

fn sheet_path(dir: &Path, label: &str) -> PathBuf {
    dir.join(format!("{label}_sheet.svg"))
}

fn cmd_solve<W: Write + ?Sized>(cli: &Cli, args: &SolveArgs, w: &mut W) -> Result<(), CliError> {
    let catalog = load_catalog(cli.numbering.as_deref())?;
    let target = resolve_shape(&catalog, &args.shape.shape)?;
    let doc = build_document(&target, &args.shape)?;
    let kind: TanSetKind = args.shape.set.into();
    let mode: CountMode = args.shape.mode.into();
    let path = args.out.clone().unwrap_or_else(|| {
        cli.out_dir.join(format!("{}_{}_{}.json", target.label, kind.as_str(), mode.as_str()))
    });
    write_file(&path, &doc.to_json())?;
    out(w, format_args!("{} {} {}: {}", target.label, kind.as_str(), mode.as_str(), doc.solutions.len()))?;
    out(w, format_args!("wrote {}", path.display()))?;
    if args.svg && !doc.solutions.is_empty() {
        let svg = render_sheet_svg(&doc.solutions(), &doc.region()?, SHEET_COLUMNS, &style_for(mode))?;
        let path = sheet_path(&cli.out_dir, &target.label);
        write_file(&path, &svg)?;
        out(w, format_args!("wrote {}", path.display()))?;
    }
    Ok(())
}

fn cmd_count<W: Write + ?Sized>(cli: &Cli, args: &ShapeArgs, w: &mut W) -> Result<(), CliError> {
    let catalog = load_catalog(cli.numbering.as_deref())?;
    let target = resolve_shape(&catalog, &args.shape)?;
    let doc = build_document(&target, args)?;
    out(w, format_args!("{}", doc.counts.get(args.mode.into())))
}

fn cmd_verify<W: Write + ?Sized>(cli: &Cli, args: &VerifyArgs, w: &mut W) -> Result<(), CliError> {
    let catalog = load_catalog(cli.numbering.as_deref())?;
    let (report, solved) = run_verify(&catalog)?;
    out(w, format_args!("{report}"))?;
    if let Some(path) = &args.json {
        write_file(path, &report.to_json())?;
    }
    if let Some(dir) = &args.sheets {
        let style = RenderStyle::default();
        let sheets = solved
            .par_iter()
            .filter(|s| !s.solutions.is_empty())
            .map(|s| {
                let shape = catalog.shape_by_number(s.number)?;
                let sols: Vec<Solution> = s.solutions.iter().map(|c| c.representative.clone()).collect();
                Ok((shape.label(), render_sheet_svg(&sols, &shape.region, SHEET_COLUMNS, &style)?))
            })
            .collect::<Result<Vec<_>, CliError>>()?;
        for (label, svg) in sheets {
            write_file(&sheet_path(dir, &label), &svg)?;
        }
    }
    if report.pass {
        Ok(())
    } else {
        Err(CliError::Mismatch)
    }
}

fn cmd_census<W: Write + ?Sized>(cli: &Cli, args: &CensusArgs, w: &mut W) -> Result<(), CliError> {
    let catalog = load_catalog(cli.numbering.as_deref())?;
    let cov = catalog.shapes().par_iter().map(coverage).collect::<Result<Vec<_>, _>>()?;
    for (e, c) in catalog.shapes().iter().zip(&cov) {
        let badges = format!("{}{}", if c.japanese { "J" } else { "-" }, if c.chinese { "C" } else { "-" });
        out(w, format_args!("{:<4} {badges}  {:<22} {}", e.label(), e.descriptor.to_string(), e.key))?;
    }
    let jp = cov.iter().filter(|c| c.japanese).count();
    let cn = cov.iter().filter(|c| c.chinese).count();
    out(w, format_args!("{} shapes, {jp} japanese-coverable, {cn} chinese-coverable", cov.len()))?;
    if args.svg {
        let svg = render_shape_catalog(catalog.shapes(), &cov, &RenderStyle::default())?;
        let path = cli.out_dir.join("census.svg");
        write_file(&path, &svg)?;
        out(w, format_args!("wrote {}", path.display()))?;
    }
    Ok(())
}

fn cmd_render<W: Write + ?Sized>(cli: &Cli, args: &RenderArgs, w: &mut W) -> Result<(), CliError> {
    let catalog = load_catalog(cli.numbering.as_deref())?;
    let target = resolve_shape(&catalog, &args.shape.shape)?;
    let doc = build_document(&target, &args.shape)?;
    let mode: CountMode = args.shape.mode.into();
    let style = RenderStyle { grid: args.grid, ..style_for(mode) };
    let sols = doc.solutions();
    let region = doc.region()?;
    let (path, svg) = if args.sheet {
        if args.columns == 0 {
            return Err(CliError::Usage("--columns must be at least 1".to_string()));
        }
        (sheet_path(&cli.out_dir, &target.label), render_sheet_svg(&sols, &region, args.columns, &style)?)
    } else {
        let Some(sol) = args.index.checked_sub(1).and_then(|i| sols.get(i)) else {
            return Err(CliError::Usage(format!(
                "--index {} out of range: {} has {} partitions",
                args.index,
                target.label,
                sols.len()
            )));
        };
        let name = format!("{}_{}_{}.svg", target.label, mode.as_str(), args.index);
        (cli.out_dir.join(name), render_solution_svg(sol, &region, &style)?)
    };
    write_file(&path, &svg)?;
    out(w, format_args!("wrote {}", path.display()))
}

fn cmd_strips<W: Write + ?Sized>(cli: &Cli, args: &StripsArgs, w: &mut W) -> Result<(), CliError> {
    let catalog = load_catalog(cli.numbering.as_deref())?;
    let targets = StripTargets::from_catalog(&catalog);
    let rect = &targets.rectangle;
    let sols = dedupe(&enumerate_partitions(rect, &tan_set(TanSetKind::Japanese), true)?, rect);
    for (i, s) in sols.iter().enumerate() {
        let cuts = cut_edges(&s.representative.placements, rect)?;
        let cuts: Vec<String> = cuts
            .iter()
            .map(|c| match c.kind {
                CutKind::Vertical => format!("|{}", c.bottom_x),
                CutKind::Skew => format!("{}/{}", c.bottom_x, c.top_x),
            })
            .collect();
        let twin = twin_of(s, rect)?;
        let twin_index = sols.iter().position(|t| t.key == twin.key).map_or(0, |k| k + 1);
        out(w, format_args!("{:>2}  twin {:>2}  cuts {:<28} {}", i + 1, twin_index, cuts.join(" "), s.key))?;
    }
    if args.verify || args.json.is_some() {
        let report = verify_strip_theorem(&targets)?;
        out(w, format_args!("{report}"))?;
        if let Some(path) = &args.json {
            let mut json = serde_json::to_string_pretty(&report).expect("report serializes");
            json.push('\n');
            write_file(path, &json)?;
        }
        if !report.pass {
            return Err(CliError::Mismatch);
        }
    }
    Ok(())
}

/// Runs one parsed command line, printing to `w`.
pub fn run<W: Write + ?Sized>(cli: &Cli, w: &mut W) -> Result<(), CliError> {
    match &cli.command {
        Command::Solve(a) => cmd_solve(cli, a, w),
        Command::Count(a) => cmd_count(cli, a, w),
        Command::Verify(a) => cmd_verify(cli, a, w),
        Command::Census(a) => cmd_census(cli, a, w),
        Command::Render(a) => cmd_render(cli, a, w),
        Command::Strips(a) => cmd_strips(cli, a, w),
    }
}
