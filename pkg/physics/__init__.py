"""量子力学应用：旋转谐振子、禁闭势、磁场中的两电子"""

from .models import ConfinementModel, OscillatorModel, QuantumDotModel, confinement_from_potential
from .apps import (
    AsymptoticReport,
    BoundaryReport,
    RadialResidual,
    asymptotic_diagnostic,
    asymptotic_form,
    boundary_limit,
    confinement_energy,
    confinement_gch_params,
    confinement_radial_residual,
    gch_params_for,
    normalize,
    normalize_model,
    oscillator_eigenvalue,
    oscillator_gch_params,
    oscillator_radial_residual,
    qdot_asymptotic_wavefunction,
    qdot_bch_params,
    qdot_energy,
    qdot_gch_params,
    qdot_radial_residual,
    qdot_scaled_energy,
    wavefunction_eval,
)

__all__ = [
    # 模型
    'ConfinementModel',
    'OscillatorModel',
    'QuantumDotModel',
    'confinement_from_potential',

    # 本征值与参数映射
    'confinement_energy',
    'confinement_gch_params',
    'gch_params_for',
    'oscillator_eigenvalue',
    'oscillator_gch_params',
    'qdot_bch_params',
    'qdot_energy',
    'qdot_gch_params',
    'qdot_scaled_energy',

    # 波函数
    'BoundaryReport',
    'RadialResidual',
    'boundary_limit',
    'confinement_radial_residual',
    'normalize',
    'normalize_model',
    'oscillator_radial_residual',
    'qdot_radial_residual',
    'wavefunction_eval',

    # 渐近诊断
    'AsymptoticReport',
    'asymptotic_diagnostic',
    'asymptotic_form',
    'qdot_asymptotic_wavefunction',
]
