class LocalizerZH():

    # 通用
    none: str = "无"
    done: str = "完成"
    failed: str = "失败"

    # 日志
    log_crash: str = "出现严重错误，程序即将退出，错误信息已保存至日志文件 …"
    log_expert_mode: str = "专家模式已启用 …"
    log_read_file_fail: str = "文件读取失败 …"
    log_write_file_fail: str = "文件写入失败 …"

    # 命令行
    cli_verify_file: str = "文件不存在 …"
    cli_done: str = "命令 {COMMAND} 已完成 …"
    cli_surrogate_hint: str = "请先依次执行 design 与 train 生成代理模型 …"
    cli_sample_rate_mismatch: str = "loop 节中的采样率 {LOOP} Hz 与 vehicle 节的 {VEHICLE} Hz 不一致，已按 vehicle 节执行 …"
    cli_replay_done: str = "已重放 {COMMAND}，输出 {OUT} 与清单记录一致 …"

    # 路面分析
    analyze_result: str = "拟合 GD = {GD}，自由斜率 = {SLOPE}，路面等级 = {CLASS} …"

    # 试验设计
    design_progress: str = "正在仿真训练集 …"
    design_done: str = "训练集仿真完成，共 {COUNT} 个设计点 …"
    design_rank_low: str = "设计输出与 GD 的秩相关为 {RANK}，低于 {THRESHOLD}，训练集对 GD 不敏感 …"

    # 代理模型
    emulator_progress: str = "正在采样代理模型超参数 …"
    emulator_trained: str = "代理模型训练完成，超参数 {HYPER}，接受率 {RATE} …"
    emulator_outside_box: str = "预测点 v = {V}，GD = {GD} 超出训练区间，结果为外推 …"
    emulator_prior_mismatch: str = "代理模型 {PATH} 的先验区间与当前配置不一致 …"
    emulator_config_mismatch: str = "代理模型 {PATH} 的训练配置与当前配置不一致 …"

    # 标定
    calibrate_outside_box: str = "速度 v = {V} 超出训练区间，标定结果为外推 …"
    calibrate_result: str = "后验均值 GD = {GD}，标准差 {STD}，样本数 {COUNT} …"

    # 网格评估
    assess_progress: str = "正在评估标定网格 …"
    assess_cell_fail: str = "网格 v = {V}，GD = {GD}，重复 {REP} 评估失败 …"

    # 闭环
    loop_case_mismatch: str = "代理模型噪声工况 {SURROGATE} 与闭环工况 {CASE} 不一致 …"
    loop_calibration_fail: str = "t = {T} s，x = {X} m 处标定退化，沿用上一速度指令 …"
    loop_mode_switch: str = "t = {T} s，x = {X} m，GD = {GD}，切换至 {MODE} 模式，速度指令 {V} m/s …"
    rmse_result: str = "设定 GD = {GD} 路段的均方根误差为 {RMSE} …"
