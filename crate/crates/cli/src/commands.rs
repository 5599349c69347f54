use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use vybe_core::io::{to_json_string, AlgebraConfig, BuiltModule, MapFile, ModuleSpec, SpaceCodec, TensorFile};
use vybe_core::lie_reduction::{level1_lie, reduce_map, reduce_tensor, verify_map_reduction, verify_tensor_reduction};
use vybe_core::module_theory::{verify_contragredient, verify_module_axioms, ContragredientModule, Intertwiners, SemidirectVOA, VoaModule};
use vybe_core::voa_core::{verify_voa_axioms, CurrentVOA, GradedSpace, VertexAlgebra};
use vybe_core::yang_baxter::{
    build_r_from_t, check_relative_rbo, check_strong_rbo, check_voybe, check_voybe_blocks, map_to_tensor, tensor_to_map,
    DiagonalTensor, LevelPreservingMap,
};
use vybe_core::{CheckReport, SpaceTag};

use super::{Command, Common, ConvertTo, Format};

type Res<T> = std::result::Result<T, String>;

const DEFAULT_MS: [i64; 6] = [-2, -1, 0, 1, 2, 3];

fn err(e: vybe_core::Error) -> String {
    e.to_string()
}

fn read(path: &Path) -> Res<String> {
    std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

fn at(path: &Path) -> impl Fn(vybe_core::Error) -> String + '_ {
    move |e| format!("{}: {e}", path.display())
}

/// The algebra, the optional module and derived carriers for one run.
struct Ctx {
    v: Arc<CurrentVOA>,
    module: Option<BuiltModule>,
}

/// `V ⋊ W'` with its vector codec.
struct Semidirect {
    u: Arc<SemidirectVOA>,
    codec: SpaceCodec,
}

impl Ctx {
    fn load(c: &Common) -> Res<Self> {
        let path = c.algebra.as_ref().ok_or("--algebra is required")?;
        let cfg = AlgebraConfig::from_json(&read(path)?).map_err(at(path))?;
        let v = cfg.build(c.max_degree).map_err(at(path))?;
        let module = match &c.module {
            Some(s) => Some(s.parse::<ModuleSpec>().map_err(err)?.build(&v).map_err(err)?),
            None => None,
        };
        Ok(Ctx { v, module })
    }

    fn module_or_adjoint(&self) -> Res<BuiltModule> {
        match &self.module {
            Some(m) => Ok(m.clone()),
            None => ModuleSpec::Adjoint.build(&self.v).map_err(err),
        }
    }

    fn semidirect(&self) -> Res<Semidirect> {
        let w = self.module_or_adjoint()?;
        let ints = Intertwiners::new(w.module.clone()).map_err(err)?;
        let wp: Arc<dyn VoaModule> = ints.contragredient().clone();
        let base: Arc<dyn VertexAlgebra> = self.v.clone();
        let u = Arc::new(SemidirectVOA::new(base, wp).map_err(err)?);
        let ideal = SpaceCodec::module(&w).dual().map_err(err)?;
        let codec = SpaceCodec::semidirect(SpaceCodec::algebra(&self.v), ideal, u.tag());
        Ok(Semidirect { u, codec })
    }

    /// Carrier of tensors: `V`, or `V ⋊ W'` when a module is given.
    fn carrier(&self) -> Res<(Arc<dyn VertexAlgebra>, SpaceCodec, Option<Semidirect>)> {
        if self.module.is_some() {
            let s = self.semidirect()?;
            Ok((s.u.clone(), s.codec.clone(), Some(s)))
        } else {
            Ok((self.v.clone(), SpaceCodec::algebra(&self.v), None))
        }
    }

    fn load_map(&self, path: &Path, w: &BuiltModule) -> Res<LevelPreservingMap> {
        let f = MapFile::parse(&read(path)?).map_err(at(path))?;
        let wm = &w.module;
        f.decode(&wm.tag(), &self.v.tag(), |n| wm.dim(n), |n| self.v.dim(n)).map_err(at(path))
    }
}

fn input<'a>(c: &'a Common, primary: &'a Option<PathBuf>, what: &str) -> Res<&'a Path> {
    primary.as_deref().or(c.input.as_deref()).ok_or_else(|| format!("a {what} file is required"))
}

fn load_tensor(path: &Path, codec: &SpaceCodec) -> Res<DiagonalTensor> {
    TensorFile::parse(&read(path)?).and_then(|f| f.decode(codec)).map_err(at(path))
}

fn ms(c: &Common) -> Vec<i64> {
    if c.m.is_empty() {
        DEFAULT_MS.to_vec()
    } else {
        c.m.clone()
    }
}

fn write_out(c: &Common, text: &str) -> Res<()> {
    match &c.out {
        Some(p) => std::fs::write(p, text).map_err(|e| format!("{}: {e}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn emit_report(c: &Common, report: &CheckReport) -> Res<ExitCode> {
    let text = match c.format {
        Format::Text => report.to_string(),
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&report.to_json()).expect("serializable");
            s.push('\n');
            s
        }
    };
    write_out(c, &text)?;
    Ok(if report.passed() { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn emit_file<T: serde::Serialize>(c: &Common, x: &T) -> Res<ExitCode> {
    write_out(c, &to_json_string(x))?;
    Ok(ExitCode::SUCCESS)
}

pub fn run(cmd: Command) -> Res<ExitCode> {
    match cmd {
        Command::CheckVoa(c) => check_voa(&c),
        Command::CheckVoybe(c) => {
            let ctx = Ctx::load(&c)?;
            let (u, codec, sd) = ctx.carrier()?;
            let r = load_tensor(input(&c, &c.tensor, "tensor")?, &codec)?;
            let report = match sd {
                Some(s) => check_voybe_blocks(&s.u, &r, &ms(&c)),
                None => check_voybe(u.as_ref(), &r, &ms(&c)),
            }
            .map_err(err)?;
            emit_report(&c, &report)
        }
        Command::CheckRbo(c) => {
            let ctx = Ctx::load(&c)?;
            let w = ctx.module_or_adjoint()?;
            let t = ctx.load_map(input(&c, &c.map, "map")?, &w)?;
            emit_report(&c, &check_relative_rbo(w.module.as_ref(), &t, &ms(&c)).map_err(err)?)
        }
        Command::CheckStrongRbo(c) => {
            let ctx = Ctx::load(&c)?;
            let w = ctx.module_or_adjoint()?;
            let t = ctx.load_map(input(&c, &c.map, "map")?, &w)?;
            let ints = Intertwiners::new(w.module.clone()).map_err(err)?;
            emit_report(&c, &check_strong_rbo(&ints, &t, &ms(&c)).map_err(err)?)
        }
        Command::BuildR(c) => {
            let ctx = Ctx::load(&c)?;
            let w = ctx.module_or_adjoint()?;
            let t = ctx.load_map(input(&c, &c.map, "map")?, &w)?;
            let s = ctx.semidirect()?;
            let r = build_r_from_t(&t, &s.u).map_err(err)?;
            emit_file(&c, &TensorFile::encode(&r, &s.codec).map_err(err)?)
        }
        Command::Convert(c) => convert(&c),
        Command::ReduceLevel1(c) => reduce_level1(&c),
        Command::VerifyReduction(c) => {
            let ctx = Ctx::load(&c)?;
            let report = if let Some(p) = c.tensor.as_deref() {
                let (u, codec, _) = ctx.carrier()?;
                let r = load_tensor(p, &codec)?;
                verify_tensor_reduction(u, &r)
            } else {
                let w = ctx.module_or_adjoint()?;
                let t = ctx.load_map(input(&c, &c.map, "map or tensor")?, &w)?;
                let ints = Intertwiners::new(w.module.clone()).map_err(err)?;
                verify_map_reduction(&ints, &t)
            }
            .map_err(err)?;
            emit_report(&c, &report)
        }
    }
}

fn check_voa(c: &Common) -> Res<ExitCode> {
    let ctx = Ctx::load(c)?;
    let mut report = verify_voa_axioms(ctx.v.as_ref()).map_err(err)?;
    if let Some(m) = &ctx.module {
        report.absorb("module ", verify_module_axioms(m.module.as_ref()).map_err(err)?);
        if matches!(m.spec, ModuleSpec::Coadjoint) {
            let adj = ModuleSpec::Adjoint.build(&ctx.v).map_err(err)?;
            let wp = ContragredientModule::new(adj.module).map_err(err)?;
            report.absorb("contragredient ", verify_contragredient(&wp).map_err(err)?);
        }
    }
    emit_report(c, &report)
}

fn convert(c: &Common) -> Res<ExitCode> {
    let ctx = Ctx::load(c)?;
    let (u, codec, _) = ctx.carrier()?;
    match c.to.ok_or("convert needs --to map or --to tensor")? {
        ConvertTo::Map => {
            let r = load_tensor(input(c, &c.tensor, "tensor")?, &codec)?;
            let t = tensor_to_map(&r, |n| u.dim(n)).map_err(err)?;
            emit_file(c, &MapFile::encode(&t))
        }
        ConvertTo::Tensor => {
            let path = input(c, &c.map, "map")?;
            let f = MapFile::parse(&read(path)?).map_err(at(path))?;
            let t = f.decode(&u.tag().dual(), &u.tag(), |n| u.dim(n), |n| u.dim(n)).map_err(at(path))?;
            let r = map_to_tensor(&t).map_err(err)?;
            emit_file(c, &TensorFile::encode(&r, &codec).map_err(err)?)
        }
    }
}

fn reduce_level1(c: &Common) -> Res<ExitCode> {
    let ctx = Ctx::load(c)?;
    if let Some(p) = c.tensor.as_deref() {
        let (u, codec, sd) = ctx.carrier()?;
        let r = load_tensor(p, &codec)?;
        let carrier = if sd.is_some() { "lie_semidirect" } else { "lie" };
        let big_r = reduce_tensor(&r, u.dim(1), SpaceTag::new(carrier)).map_err(err)?;
        return emit_file(c, &TensorFile::encode_lie(&big_r, &codec).map_err(err)?);
    }
    let w = ctx.module_or_adjoint()?;
    let t = ctx.load_map(input(c, &c.map, "map or tensor")?, &w)?;
    let g = level1_lie(ctx.v.as_ref()).map_err(err)?;
    let m = reduce_map(&t, w.module.dim(1), g.dim()).map_err(err)?;
    emit_file(c, &MapFile::encode_matrix(&m, &format!("{}(1)", w.module.tag()), "lie"))
}
