# Services layer for the simulation
from app.services.pauli.pauli_string_service import (
    PauliString,
    StateVector,
    apply_string,
    expectation,
)
from app.services.pauli.pauli_operator_service import (
    OperatorSum,
    materialize,
)
from app.services.lattice.lattice_geometry_service import (
    Lattice,
    LoopPath,
)
from app.services.lattice.lattice_operator_service import (
    build_hamiltonian,
    classify_excitations,
    plaquette_operator,
    wilson_loop,
)
from app.services.spectra.spectra_dense_service import (
    dense_spectrum,
)
from app.services.spectra.spectra_lanczos_service import (
    lanczos_ground,
)
from app.services.spectra.spectra_analytic_service import (
    analytic_ground_2x2,
)
from app.services.adiabatic.adiabatic_schedule_service import (
    discretize,
    make_schedule,
)
from app.services.adiabatic.adiabatic_optimize_service import (
    optimize_sweep,
)
from app.services.adiabatic.adiabatic_evolve_service import (
    evolve,
    min_fidelity_scan,
)
from app.services.trotter.trotter_step_service import (
    trotter_step,
)
from app.services.trotter.trotter_compile_service import (
    compile_four_body,
)
from app.services.trotter.trotter_sequence_service import (
    sequence_unitary,
    verify_equivalence,
)
from app.services.observables.observables_density_service import (
    concurrence,
    local_order_P,
    reduced_density,
    state_fidelity,
)
from app.services.observables.observables_correlation_service import (
    spin_correlations,
    wilson_expectation,
)
from app.services.tomography.tomography_record_service import (
    synth_measure,
)
from app.services.tomography.tomography_reconstruct_service import (
    reconstruct,
    tomography_report,
)
