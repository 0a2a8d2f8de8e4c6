//! The external control surface of the pipeline.
//!
//! Everything outside the vision system drives it through this wrapper: run
//! one frame, run a stream to completion, toggle stages, read the last
//! detections. Stage-enable edits land on a pending plan and take effect at
//! the next frame boundary, never mid-frame.

use fieldvision_core::{
    Controller, DetectionSet, FrameReport, FrameSource, PipelineParams, PlanError, Stage,
    StagePlan, StreamRunError, StreamSummary, VisionBlackboard,
};

pub struct ControlWrapper<S: FrameSource> {
    source: S,
    controller: Controller,
    pending_plan: StagePlan,
    blackboard: VisionBlackboard,
    last_detections: Option<DetectionSet>,
}

impl<S: FrameSource> ControlWrapper<S> {
    /// Wire a frame source to a fresh pipeline. The plan is validated here;
    /// the blackboard is created once per wrapper.
    pub fn new(source: S, plan: StagePlan, params: PipelineParams) -> Result<Self, PlanError> {
        let controller = Controller::new(plan, params)?;
        let blackboard = VisionBlackboard::new(source.lut());
        Ok(ControlWrapper {
            source,
            controller,
            pending_plan: plan,
            blackboard,
            last_detections: None,
        })
    }

    /// Record a stage flag change. Takes effect from the next frame onward;
    /// last write before the boundary wins. Rejected immediately when it
    /// would leave an enabled stage without a prerequisite.
    pub fn set_stage_enabled(&mut self, stage: Stage, enabled: bool) -> Result<(), PlanError> {
        self.pending_plan.set_enabled(stage, enabled)
    }

    pub fn plan(&self) -> &StagePlan {
        &self.pending_plan
    }

    /// Process the next frame, or `Ok(None)` at end of stream.
    pub fn run_frame(
        &mut self,
    ) -> Result<Option<FrameReport>, fieldvision_core::SourceError> {
        // Promote pending flag edits at the frame boundary. The pending plan
        // is validated on every edit, so this cannot fail.
        self.controller
            .set_plan(self.pending_plan)
            .expect("pending plan is always validated");
        match self.source.next_frame()? {
            None => Ok(None),
            Some((frame, kinematics)) => {
                let report = self.controller.run_frame(&mut self.blackboard, frame, kinematics);
                self.last_detections = Some(report.detections.clone());
                Ok(Some(report))
            }
        }
    }

    /// Run the source to end of stream, feeding every report to `sink`.
    pub fn run_stream(
        &mut self,
        mut sink: impl FnMut(&FrameReport),
    ) -> Result<StreamSummary, StreamRunError> {
        self.controller
            .set_plan(self.pending_plan)
            .expect("pending plan is always validated");
        let last = &mut self.last_detections;
        self.controller
            .run_stream(&mut self.blackboard, &mut self.source, |report| {
                *last = Some(report.detections.clone());
                sink(report);
            })
    }

    /// The detection set of the most recently processed frame.
    pub fn last_detections(&self) -> Option<&DetectionSet> {
        self.last_detections.as_ref()
    }

    pub fn source(&self) -> &S {
        &self.source
    }
}
