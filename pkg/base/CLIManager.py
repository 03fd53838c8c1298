import argparse
import json
import os
import sys
from typing import Any
from typing import Callable
try:
    from typing import Self
except ImportError:
    from typing_extensions import Self

import numpy as np
from rich.table import Table

from base.Base import Base
from base.BaseError import BaseError
from base.BaseError import InvalidArgumentError
from base.BaseError import LoadFailedError
from base.BaseError import MissingArtifactError
from base.BaseError import NumericalError
from base.BaseError import ReplayMismatchError
from base.LogManager import LogManager
from module.Calibrate.Calibrator import Calibrator
from module.Calibrate.GridAssessor import GridAssessor
from module.Calibrate.McmcConfig import McmcConfig
from module.Calibrate.Observation import Observation
from module.Config import Config
from module.Control.ControllerConfig import ControllerConfig
from module.Design.DesignBuilder import DesignBuilder
from module.Design.PriorBox import PriorBox
from module.Emulator.EmulatorConfig import EmulatorConfig
from module.Emulator.EmulatorTrainer import EmulatorTrainer
from module.Emulator.Surrogate import Surrogate
from module.File.AssessmentFile import AssessmentFile
from module.File.FileManager import FileManager
from module.File.ImuFile import ImuFile
from module.File.PosteriorFile import PosteriorFile
from module.File.ProfileFile import ProfileFile
from module.File.RunManifest import RunManifest
from module.File.TraceFile import TraceFile
from module.File.TrainingSetFile import TrainingSetFile
from module.Localizer.Localizer import Localizer
from module.Loop.LoopConfig import LoopConfig
from module.Loop.LoopRunner import LoopRunner
from module.Loop.TrackSpec import TrackSpec
from module.Terrain.PsdEstimator import PsdEstimator
from module.Terrain.RoadSpec import RoadSpec
from module.Terrain.TerrainGenerator import TerrainGenerator
from module.Vehicle.HalfCarModel import HalfCarModel
from module.Vehicle.HalfCarParams import HalfCarParams
from module.Vehicle.NoiseSpec import NoiseSpec

class CLIManager(Base):

    # 默认参考路面
    TRACK_PATH: str = "./resource/track_reference.json"

    def __init__(self, version: str = "v0.0.0") -> None:
        super().__init__()

        self.version = version

    @classmethod
    def get(cls) -> Self:
        if getattr(cls, "__instance__", None) is None:
            cls.__instance__ = cls()

        return cls.__instance__

    def set_version(self, version: str) -> None:
        self.version = version

    def build_parser(self) -> argparse.ArgumentParser:
        common = argparse.ArgumentParser(add_help = False)
        common.add_argument("--config", type = str, default = None)
        common.add_argument("--seed", type = int, default = None)
        common.add_argument("--json-summary", action = "store_true")
        common.add_argument("--expert", action = "store_true")

        parser = argparse.ArgumentParser(prog = "terracal")
        commands = parser.add_subparsers(dest = "command", required = True)

        p = commands.add_parser("gen-terrain", parents = [common])
        p.add_argument("--gd", type = float, default = None)
        p.add_argument("--length", type = float, default = None)
        p.add_argument("--spacing", type = float, default = None)
        p.add_argument("--n-min", type = float, default = None)
        p.add_argument("--n-max", type = float, default = None)
        p.add_argument("--out", type = str, default = None)

        p = commands.add_parser("analyze", parents = [common])
        p.add_argument("profile", type = str)
        p.add_argument("--method", type = str, choices = [v.lower() for v in Base.PsdMethod], default = None)

        p = commands.add_parser("design", parents = [common])
        p.add_argument("--n", type = int, default = None)
        p.add_argument("--case", type = str, choices = [v for v in Base.NoiseCase], default = Base.NoiseCase.A)
        p.add_argument("--length", type = float, default = None)
        p.add_argument("--workers", type = int, default = None)
        p.add_argument("--out", type = str, default = None)

        p = commands.add_parser("simulate", parents = [common])
        p.add_argument("--profile", type = str, default = None)
        p.add_argument("--gd", type = float, default = None)
        p.add_argument("--length", type = float, default = None)
        p.add_argument("--v", type = float, required = True)
        p.add_argument("--noise", action = "store_true")
        p.add_argument("--out", type = str, default = None)

        p = commands.add_parser("train", parents = [common])
        p.add_argument("--training-set", type = str, required = True)
        p.add_argument("--iters", type = int, default = None)
        p.add_argument("--out", type = str, default = None)

        p = commands.add_parser("calibrate", parents = [common])
        p.add_argument("--surrogate", type = str, required = True)
        p.add_argument("--f", type = float, required = True)
        p.add_argument("--v", type = float, required = True)
        p.add_argument("--n-samples", type = int, default = None)
        p.add_argument("--out", type = str, default = None)

        p = commands.add_parser("run-loop", parents = [common])
        p.add_argument("--case", type = str, choices = [v for v in Base.NoiseCase], default = None)
        p.add_argument("--surrogate", type = str, default = None)
        p.add_argument("--track", type = str, default = None)
        p.add_argument("--delay", type = int, default = None)
        p.add_argument("--out", type = str, default = None)

        p = commands.add_parser("assess", parents = [common])
        p.add_argument("--surrogate", type = str, required = True)
        p.add_argument("--v", type = float, nargs = "*", default = None)
        p.add_argument("--gd", type = float, nargs = "*", default = None)
        p.add_argument("--reps", type = int, default = 1)
        p.add_argument("--case", type = str, choices = [v for v in Base.NoiseCase], default = Base.NoiseCase.A)
        p.add_argument("--workers", type = int, default = None)
        p.add_argument("--out", type = str, default = None)

        p = commands.add_parser("eval-rmse", parents = [common])
        p.add_argument("--trace", type = str, required = True)
        p.add_argument("--track", type = str, default = None)
        p.add_argument("--exclude-boundary", action = "store_true")

        p = commands.add_parser("replay", parents = [common])
        p.add_argument("manifest", type = str)
        p.add_argument("--out", type = str, default = None)

        return parser

    # 返回退出码，日志走标准错误流，--json-summary 的摘要走标准输出
    def run(self, argv: list[str] = None) -> int:
        argv = sys.argv[1:] if argv is None else argv
        args = self.build_parser().parse_args(argv)

        config = Config()
        if args.config is not None:
            if not os.path.isfile(args.config):
                return self.fail(args, MissingArtifactError(f"{args.config} {Localizer.get().cli_verify_file}"))
            config.load(args.config)
        else:
            config.load()

        Localizer.set_app_language(config.app_language)
        if args.expert or config.expert_mode:
            LogManager.get().set_expert_mode(True)

        handler: Callable[[argparse.Namespace, Config, RunManifest], tuple[str, dict[str, Any]]] = getattr(self, "cmd_" + args.command.replace("-", "_"))
        manifest = RunManifest(command = args.command, version = self.version, argv = list(argv))

        try:
            primary, summary = handler(args, config, manifest)
        except BaseError as e:
            return self.fail(args, e)
        except (np.linalg.LinAlgError, ArithmeticError) as e:
            return self.fail(args, NumericalError(f"{type(e).__name__}: {e}"))

        manifest.config = config.asdict()
        manifest.summary = {**manifest.summary, **summary}
        if primary is not None:
            manifest.save(RunManifest.path_for(primary))

        self.print_summary(args.command, manifest.summary)
        self.info(Localizer.get().cli_done.replace("{COMMAND}", args.command))
        if args.json_summary:
            print(json.dumps({"ok": True, "command": args.command, **manifest.summary}, default = __class__.jsonable), flush = True)

        return int(Base.ExitCode.OK)

    # 摘要表格输出到标准错误流
    def print_summary(self, command: str, summary: dict[str, Any]) -> None:
        table = Table(title = command, show_header = True, header_style = "bold")
        table.add_column("key", style = "cyan")
        table.add_column("value", justify = "right")
        for k, v in summary.items():
            if isinstance(v, float):
                text = f"{v:.6g}"
            elif isinstance(v, dict):
                text = ", ".join(f"{a} = {b:.4g}" if isinstance(b, float) else f"{a} = {b}" for a, b in v.items())
            else:
                text = str(v)
            table.add_row(k, text)

        LogManager.get().console.print(table)

    def fail(self, args: argparse.Namespace, e: BaseError) -> int:
        code = int(e.get_exit_code())
        self.error(f"{type(e).__name__}: {e}")
        if getattr(args, "json_summary", False):
            print(json.dumps({"ok": False, "command": args.command, "error": type(e).__name__, "message": str(e), "exit_code": code}), flush = True)
        return code

    @classmethod
    def jsonable(cls, v: Any) -> Any:
        if isinstance(v, np.generic):
            return v.item()
        if isinstance(v, np.ndarray):
            return v.tolist()
        return str(v)

    def output_path(self, config: Config, value: str, name: str) -> str:
        return value if value is not None else os.path.join(config.output_folder, name)

    def build_model(self, config: Config) -> HalfCarModel:
        return HalfCarModel(HalfCarParams.from_dict(config.vehicle), float(config.vehicle["dt_internal"]))

    def build_prior(self, config: Config) -> PriorBox:
        return PriorBox.from_dict(config.design)

    def build_noise(self, config: Config, case: str) -> NoiseSpec:
        return NoiseSpec(enabled = case == Base.NoiseCase.B, sigma = float(config.noise["sigma"]), seed = int(config.noise["seed"]))

    def build_builder(self, config: Config, model: HalfCarModel) -> DesignBuilder:
        return DesignBuilder(
            model = model,
            terrain = RoadSpec.from_dict(config.terrain),
            sample_rate_hz = float(config.vehicle["sample_rate_hz"]),
            training_length_m = float(config.design["training_length_m"]),
            max_workers = int(config.design["max_workers"]),
        )

    # 闭环采样率取 vehicle 节，与训练集仿真保持一致
    def build_loop_config(self, config: Config, manifest: RunManifest) -> LoopConfig:
        sample_rate_hz = float(config.vehicle["sample_rate_hz"])
        if not config.sample_rate_consistent():
            self.warning(
                Localizer.get().cli_sample_rate_mismatch
                    .replace("{LOOP}", str(config.loop["sample_rate_hz"]))
                    .replace("{VEHICLE}", str(sample_rate_hz))
            )
            manifest.summary.setdefault("config_warnings", []).append("sample_rate_mismatch")

        return LoopConfig.from_dict({**config.loop, "sample_rate_hz": sample_rate_hz})

    # 轨迹文件的清单中记录了生成时的路面种子，缺失时取 terrain 节
    def track_seed(self, config: Config, trace_path: str) -> int:
        path = RunManifest.path_for(trace_path)
        if os.path.isfile(path):
            seed = RunManifest.load(path).seeds.get("track")
            if seed is not None:
                return int(seed)

        return int(config.terrain["seed"])

    def load_surrogate(self, path: str, config: Config, manifest: RunManifest) -> Surrogate:
        try:
            surrogate = Surrogate.load(path, prior = self.build_prior(config), config_digest = config.digest())
        except MissingArtifactError as e:
            raise MissingArtifactError(f"{e}. {Localizer.get().cli_surrogate_hint}") from e

        manifest.add_input(path)
        manifest.summary["surrogate_warnings"] = list(surrogate.warnings)
        return surrogate

    def load_track(self, path: str, seed: int, manifest: RunManifest) -> TrackSpec:
        if path is None and not os.path.isfile(__class__.TRACK_PATH):
            return TrackSpec.reference(seed = seed)

        path = __class__.TRACK_PATH if path is None else path
        if not os.path.isfile(path):
            raise MissingArtifactError(f"track file {path} does not exist")

        try:
            with open(path, "r", encoding = "utf-8-sig") as reader:
                data = json.load(reader)
        except Exception as e:
            raise LoadFailedError(f"track file {path} is not readable: {e}") from e

        manifest.add_input(path)
        return TrackSpec.from_dict({"seed": seed, **data})

    def cmd_gen_terrain(self, args: argparse.Namespace, config: Config, manifest: RunManifest) -> tuple[str, dict[str, Any]]:
        config.override("terrain", "gd_target", args.gd)
        config.override("terrain", "length_m", args.length)
        config.override("terrain", "spacing_m", args.spacing)
        config.override("terrain", "n_min", args.n_min)
        config.override("terrain", "n_max", args.n_max)
        config.override("terrain", "seed", args.seed)

        spec = RoadSpec.from_dict(config.terrain)
        manifest.seeds["terrain"] = spec.seed
        with manifest.timer("generate"):
            profile = TerrainGenerator.generate(spec)

        out = ProfileFile.write(self.output_path(config, args.out, "profile.csv"), profile)
        manifest.add_output(out)

        return out, {"out": out, "count": profile.get_count(), "length_m": profile.length(), "gd_target": spec.gd_target}

    def cmd_analyze(self, args: argparse.Namespace, config: Config, manifest: RunManifest) -> tuple[str, dict[str, Any]]:
        method = Base.PsdMethod((args.method or config.terrain["psd_method"]).upper())
        profile = ProfileFile.read(args.profile)
        manifest.add_input(args.profile)

        with manifest.timer("estimate"):
            estimate, road_class = PsdEstimator.classify_profile(profile, method)

        self.info(
            Localizer.get().analyze_result
                .replace("{GD}", f"{estimate.gd_fitted:.2f}")
                .replace("{SLOPE}", f"{estimate.slope:.3f}")
                .replace("{CLASS}", road_class.label)
        )

        return None, {
            "gd_fitted": estimate.gd_fitted,
            "slope": estimate.slope,
            "class": road_class.label,
            "variance": float(np.var(profile.heights_m)),
            "integrated_power": estimate.integrated_power(),
        }

    def cmd_design(self, args: argparse.Namespace, config: Config, manifest: RunManifest) -> tuple[str, dict[str, Any]]:
        config.override("design", "n_points", args.n)
        config.override("design", "seed", args.seed)
        config.override("design", "training_length_m", args.length)
        config.override("design", "max_workers", args.workers)

        prior = self.build_prior(config)
        noise = self.build_noise(config, args.case)
        builder = self.build_builder(config, self.build_model(config))
        manifest.seeds["design"] = int(config.design["seed"])
        manifest.seeds["noise"] = noise.seed

        with manifest.timer("lhs"):
            design = DesignBuilder.lhs_design(int(config.design["n_points"]), prior, int(config.design["seed"]))
        with manifest.timer("simulate"):
            ts = builder.build_training_set(design, prior, noise)

        ts.provenance["config_digest"] = config.digest()
        out = TrainingSetFile.write(self.output_path(config, args.out, f"training_{args.case}.csv"), ts)
        manifest.add_output(out)

        # NaN 同样视为不敏感
        rank = DesignBuilder.rank_monotonicity(ts)
        manifest.summary["design_warnings"] = []
        if not rank >= DesignBuilder.RANK_THRESHOLD:
            self.warning(
                Localizer.get().design_rank_low
                    .replace("{RANK}", f"{rank:.3f}")
                    .replace("{THRESHOLD}", f"{DesignBuilder.RANK_THRESHOLD:.2f}")
            )
            manifest.summary["design_warnings"].append("rank_monotonicity")

        f = ts.outputs()
        return out, {
            "out": out,
            "count": ts.get_count(),
            "case": str(args.case),
            "f_min": float(np.min(f)),
            "f_max": float(np.max(f)),
            "rank_monotonicity": rank,
        }

    def cmd_simulate(self, args: argparse.Namespace, config: Config, manifest: RunManifest) -> tuple[str, dict[str, Any]]:
        config.override("noise", "seed", args.seed)

        if args.profile is not None:
            profile = ProfileFile.read(args.profile)
            manifest.add_input(args.profile)
        else:
            config.override("terrain", "gd_target", args.gd)
            config.override("terrain", "length_m", args.length)
            spec = RoadSpec.from_dict(config.terrain)
            manifest.seeds["terrain"] = spec.seed
            profile = TerrainGenerator.generate(spec)

        model = self.build_model(config)
        noise = self.build_noise(config, Base.NoiseCase.B if args.noise else Base.NoiseCase.A)
        manifest.seeds["noise"] = noise.seed

        with manifest.timer("simulate"):
            imu = model.simulate(profile, args.v, float(config.vehicle["sample_rate_hz"]), noise)

        out = ImuFile.write(self.output_path(config, args.out, "imu.csv"), imu)
        manifest.add_output(out)

        summary = {"out": out, "count": imu.get_count(), "f": DesignBuilder.metric_f(imu.a_front)}
        if noise.enabled:
            summary["snr_db"] = HalfCarModel.signal_to_noise_db(imu.a_clean, noise.sigma)
        return out, summary

    def cmd_train(self, args: argparse.Namespace, config: Config, manifest: RunManifest) -> tuple[str, dict[str, Any]]:
        config.override("emulator", "iters", args.iters)
        config.override("emulator", "seed", args.seed)

        ts = TrainingSetFile.read(args.training_set)
        manifest.add_input(args.training_set)
        manifest.seeds["emulator"] = int(config.emulator["seed"])

        trainer = EmulatorTrainer(EmulatorConfig.from_dict(config.emulator))
        with manifest.timer("train"):
            surrogate = trainer.train(ts, config_digest = ts.provenance.get("config_digest", ""))

        with manifest.timer("loo"):
            loo = surrogate.loo()
        f = ts.outputs()
        loo_error = float(np.median(np.abs(loo - f)) / (np.max(f) - np.min(f)))

        case = Base.NoiseCase.B if ts.noise.enabled else Base.NoiseCase.A
        out = surrogate.save(self.output_path(config, args.out, f"surrogate_{case}.json"))
        manifest.add_output(out)

        return out, {"out": out, "hyper": surrogate.hyper.asdict(), "loo_median_error_ratio": loo_error, "case": str(case)}

    def cmd_calibrate(self, args: argparse.Namespace, config: Config, manifest: RunManifest) -> tuple[str, dict[str, Any]]:
        config.override("mcmc", "seed", args.seed)

        surrogate = self.load_surrogate(args.surrogate, config, manifest)
        cfg = McmcConfig.from_dict(config.mcmc)
        obs = Observation(f_obs = args.f, v = args.v, n_samples = args.n_samples or int(config.loop["buffer_len"]))
        manifest.seeds["mcmc"] = cfg.seed

        with manifest.timer("calibrate"):
            posterior = Calibrator().calibrate(surrogate, obs, cfg)

        out = PosteriorFile.write(self.output_path(config, args.out, "posterior.csv"), posterior)
        manifest.add_output(out)

        summary = posterior.summary()
        self.info(
            Localizer.get().calibrate_result
                .replace("{GD}", f"{summary['gd_hat']:.2f}")
                .replace("{STD}", f"{summary['gd_std']:.2f}")
                .replace("{COUNT}", str(summary["n_samples"]))
        )
        return out, {"out": out, **summary}

    def cmd_run_loop(self, args: argparse.Namespace, config: Config, manifest: RunManifest) -> tuple[str, dict[str, Any]]:
        config.override("loop", "noise_case", args.case)
        config.override("loop", "seed", args.seed)
        config.override("loop", "delay_samples", args.delay)

        loop_cfg = self.build_loop_config(config, manifest)
        surrogate_path = self.output_path(config, args.surrogate, f"surrogate_{loop_cfg.noise_case}.json")
        surrogate = self.load_surrogate(surrogate_path, config, manifest)
        track = self.load_track(args.track, int(config.terrain["seed"]), manifest)
        manifest.seeds["loop"] = loop_cfg.seed
        manifest.seeds["track"] = track.seed
        manifest.seeds["mcmc"] = int(config.mcmc["seed"])
        manifest.summary["surrogate_digest"] = surrogate.digest()

        runner = LoopRunner(
            model = self.build_model(config),
            surrogate = surrogate,
            mcmc = McmcConfig.from_dict(config.mcmc),
            control = ControllerConfig.from_dict(config.control),
            noise = self.build_noise(config, loop_cfg.noise_case),
        )
        with manifest.timer("loop"):
            trace = runner.run(track, loop_cfg)

        out = TraceFile.write(self.output_path(config, args.out, f"trace_{loop_cfg.noise_case}.csv"), trace)
        manifest.add_output(out)

        rmse = LoopRunner.evaluate_rmse(trace, track, runner.boundaries, loop_cfg.exclude_boundary)
        modes = [r.mode for r in trace if r.is_calibration()]
        switches = sum(1 for a, b in zip(modes, modes[1:]) if a != b)

        return out, {
            "out": out,
            "case": str(loop_cfg.noise_case),
            "law": str(ControllerConfig.from_dict(config.control).law),
            "calibrations": len(modes),
            "mode_switches": switches,
            "rmse": {str(k): v for k, v in rmse.items()},
        }

    def cmd_assess(self, args: argparse.Namespace, config: Config, manifest: RunManifest) -> tuple[str, dict[str, Any]]:
        config.override("mcmc", "seed", args.seed)
        config.override("design", "max_workers", args.workers)

        surrogate = self.load_surrogate(args.surrogate, config, manifest)
        v_list = list(GridAssessor.DEFAULT_V) if args.v is None else args.v
        gd_list = list(GridAssessor.DEFAULT_GD) if args.gd is None else args.gd
        if args.reps < 1:
            raise InvalidArgumentError(f"reps must be at least 1, got {args.reps}")
        if any(not surrogate.prior.contains(v, gd) for v in v_list for gd in gd_list):
            raise InvalidArgumentError("assessment grid must lie inside the prior box")

        model = self.build_model(config)
        assessor = GridAssessor(
            builder = self.build_builder(config, model),
            calibrator = Calibrator(),
            noise = self.build_noise(config, args.case),
            seed = int(config.mcmc["seed"]),
            max_workers = int(config.design["max_workers"]),
        )
        manifest.seeds["assess"] = int(config.mcmc["seed"])

        with manifest.timer("assess"):
            rows = assessor.grid_assessment(surrogate, McmcConfig.from_dict(config.mcmc), v_list, gd_list, args.reps)

        out = AssessmentFile.write(self.output_path(config, args.out, "assessment.csv"), rows, surrogate.prior.gd_min, surrogate.prior.gd_max)
        manifest.add_output(out)

        return out, {
            "out": out,
            "cells": len(rows),
            "failed": sum(1 for r in rows if r.is_failed()),
            "median_abs_pct_err": {
                f"{v}/{gd}": GridAssessor.median_abs_error(rows, v, gd) for v in v_list for gd in gd_list
            },
        }

    def cmd_eval_rmse(self, args: argparse.Namespace, config: Config, manifest: RunManifest) -> tuple[str, dict[str, Any]]:
        trace = TraceFile.read(args.trace)
        manifest.add_input(args.trace)
        if len(trace) == 0:
            raise InvalidArgumentError(f"trace {args.trace} is empty")

        # 与 run-loop 使用同一路面种子，--seed 不参与
        track = self.load_track(args.track, self.track_seed(config, args.trace), manifest)
        manifest.seeds["track"] = track.seed
        _, boundaries = track.build()
        rmse = LoopRunner.evaluate_rmse(trace, track, boundaries, args.exclude_boundary or bool(config.loop["exclude_boundary"]))

        for gd, value in rmse.items():
            self.info(Localizer.get().rmse_result.replace("{GD}", f"{gd:.0f}").replace("{RMSE}", f"{value:.2f}"))

        return None, {"rmse": {str(k): v for k, v in rmse.items()}}
    # 按清单记录的配置快照与参数重新执行，逐个比对输出文件的 sha256
    def cmd_replay(self, args: argparse.Namespace, config: Config, manifest: RunManifest) -> tuple[str, dict[str, Any]]:
        source = RunManifest.load(args.manifest)
        manifest.add_input(args.manifest)
        if source.command in ("", "replay") or len(source.outputs) != 1:
            raise InvalidArgumentError(f"manifest {args.manifest} records no replayable outputs")

        changed = [k for k, v in source.inputs.items() if not os.path.isfile(k) or FileManager.digest(k) != v]
        if len(changed) > 0:
            raise MissingArtifactError(f"inputs changed since the recorded run: {', '.join(changed)}")

        folder = self.output_path(config, args.out, "replay")
        snapshot = Config()
        for k, v in source.config.items():
            if hasattr(snapshot, k):
                setattr(snapshot, k, v)
        config_path = os.path.join(folder, "config.json")
        snapshot.save(config_path)

        # 每条命令只登记一个主输出
        recorded, digest = next(iter(source.outputs.items()))
        target = os.path.join(folder, os.path.basename(recorded))
        code = self.run(__class__.replay_argv(source.argv, config_path, target))
        if code != Base.ExitCode.OK:
            raise ReplayMismatchError(f"replayed command {source.command} exited with code {code}")

        if not os.path.isfile(target) or FileManager.digest(target) != digest:
            raise ReplayMismatchError(f"replayed output {target} differs from {recorded}")

        self.info(Localizer.get().cli_replay_done.replace("{COMMAND}", source.command).replace("{OUT}", target))
        return None, {"replayed": source.command, "out": target, "recorded": recorded, "identical": True}

    # 去掉 --json-summary、--config 与 --out，再指向配置快照与重放输出
    @classmethod
    def replay_argv(cls, argv: list[str], config_path: str, out: str) -> list[str]:
        result: list[str] = []
        tokens = list(argv)
        i = 0
        while i < len(tokens):
            token = tokens[i]
            key, sep, _ = token.partition("=")
            if token == "--json-summary":
                pass
            elif key in ("--config", "--out"):
                if sep == "":
                    i = i + 1
            else:
                result.append(token)
            i = i + 1

        result.extend(("--config", config_path, "--out", out))
        return result
