from module.Localizer.LocalizerZH import LocalizerZH

class LocalizerEN(LocalizerZH):

    # 通用
    none: str = "None"
    done: str = "Done"
    failed: str = "Failed"

    # 日志
    log_crash: str = "A critical error occurred, the app will exit, the error details have been saved to the log file …"
    log_expert_mode: str = "Expert mode is enabled …"
    log_read_file_fail: str = "File read failed …"
    log_write_file_fail: str = "File write failed …"

    # 命令行
    cli_verify_file: str = "does not exist …"
    cli_done: str = "Command {COMMAND} finished …"
    cli_surrogate_hint: str = "Run design and then train to build a surrogate first …"
    cli_sample_rate_mismatch: str = "Sample rate {LOOP} Hz in the loop section differs from {VEHICLE} Hz in the vehicle section, using the vehicle section …"
    cli_replay_done: str = "Replayed {COMMAND}, output {OUT} matches the manifest …"

    # 路面分析
    analyze_result: str = "Fitted GD = {GD}, free slope = {SLOPE}, road class = {CLASS} …"

    # 试验设计
    design_progress: str = "Simulating training set …"
    design_done: str = "Training set simulated, {COUNT} design points …"
    design_rank_low: str = "Rank correlation between design outputs and GD is {RANK}, below {THRESHOLD}, the training set is insensitive to GD …"

    # 代理模型
    emulator_progress: str = "Sampling surrogate hyperparameters …"
    emulator_trained: str = "Surrogate trained, hyperparameters {HYPER}, acceptance {RATE} …"
    emulator_outside_box: str = "Prediction at v = {V}, GD = {GD} lies outside the training box and is an extrapolation …"
    emulator_prior_mismatch: str = "Surrogate {PATH} was trained on a different prior box than the current configuration …"
    emulator_config_mismatch: str = "Surrogate {PATH} was trained with a different configuration than the current one …"

    # 标定
    calibrate_outside_box: str = "Velocity v = {V} lies outside the training box, the calibration is an extrapolation …"
    calibrate_result: str = "Posterior mean GD = {GD}, std {STD}, {COUNT} samples …"

    # 网格评估
    assess_progress: str = "Assessing calibration grid …"
    assess_cell_fail: str = "Assessment failed for v = {V}, GD = {GD}, rep {REP} …"

    # 闭环
    loop_case_mismatch: str = "Surrogate noise case {SURROGATE} differs from loop noise case {CASE} …"
    loop_calibration_fail: str = "Calibration degenerate at t = {T} s, x = {X} m, keeping the previous velocity command …"
    loop_mode_switch: str = "t = {T} s, x = {X} m, GD = {GD}, switching to {MODE} mode, velocity command {V} m/s …"
    rmse_result: str = "RMSE on segments with target GD = {GD} is {RMSE} …"
