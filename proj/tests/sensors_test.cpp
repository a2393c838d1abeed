/*
 * Copyright 2026 The TwinForge Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <vector>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "test_util.hpp"
#include "twinforge/common/error.hpp"
#include "twinforge/sensors/actuator.hpp"
#include "twinforge/sensors/camera.hpp"
#include "twinforge/sensors/encoder.hpp"
#include "twinforge/sensors/ins.hpp"
#include "twinforge/sensors/lidar.hpp"
#include "twinforge/vehicle/vehicle_model.hpp"
#include "twinforge/worldcore/world.hpp"

namespace twinforge {
namespace {

using testing::OracleProject;
using testing::RaySegment;
using testing::Rng;
using testing::RoomSegments;
using testing::Seg;
using testing::Uniform;

constexpr double kInf = std::numeric_limits<double>::infinity();

Lidar2DParams Planar(double res_deg = 1.0) {
  Lidar2DParams p;
  p.range_min = 0.1;
  p.range_max = 30.0;
  p.angle_increment = res_deg * std::numbers::pi / 180.0;
  p.angle_min = -std::numbers::pi;
  p.angle_max = std::numbers::pi - p.angle_increment;
  return p;
}

TEST(Lidar2D, EmptyWorldIsAllInfinite) {
  const Scan2D scan = lidar2d_scan(World{}, SE3{}, Planar());
  ASSERT_EQ(scan.ranges.size(), 360u);
  for (double r : scan.ranges) EXPECT_EQ(r, kInf);
}

TEST(Lidar2D, CentredInSquareRoom) {
  const World room = MakeRectangularRoom(-5, -5, 5, 5, 1.0);
  Lidar2DParams p = Planar(45.0);
  p.mount = SE3::FromTranslation(Vec3(0, 0, 0.2));
  const Scan2D scan = lidar2d_scan(room, SE3{}, p);
  ASSERT_EQ(scan.ranges.size(), 8u);
  // angle_min = -pi: index 4 is +x, index 5 is +45 degrees.
  EXPECT_NEAR(scan.ranges[4], 5.0, 1e-12);
  EXPECT_NEAR(scan.ranges[5], std::sqrt(50.0), 1e-9);
  EXPECT_NEAR(scan.ranges[5], 7.0711, 1e-4);
}

TEST(Lidar2D, ReturnsBelowMinimumRangeAreInfinite) {
  const World world({Wall{Vec2(0.05, -1), Vec2(0.05, 1), 1.0}}, Bounds{-2, -2, 2, 2});
  Lidar2DParams p = Planar();
  p.mount = SE3::FromTranslation(Vec3(0, 0, 0.2));
  const Scan2D scan = lidar2d_scan(world, SE3{}, p);
  EXPECT_EQ(scan.ranges[180], kInf);
}

TEST(Lidar2D, FiniteRangesLieWithinLimits) {
  const World room = MakeRectangularRoom(-5, -5, 5, 5, 1.0);
  Lidar2DParams p = Planar();
  p.range_max = 6.0;
  p.mount = SE3::FromTranslation(Vec3(0, 0, 0.2));
  const Scan2D scan = lidar2d_scan(room, SE3::FromTranslation(Vec3(2, 1, 0)), p);
  int finite = 0;
  int missing = 0;
  for (double r : scan.ranges) {
    if (std::isfinite(r)) {
      ++finite;
      EXPECT_GE(r, p.range_min);
      EXPECT_LE(r, p.range_max);
    } else {
      ++missing;
    }
  }
  EXPECT_GT(finite, 0);
  EXPECT_GT(missing, 0);
}

TEST(Lidar2D, MatchesAnalyticOracleAtRandomPoses) {
  const World room = MakeRectangularRoom(-5, -5, 5, 5, 1.0);
  const auto segs = RoomSegments(5.0);
  Lidar2DParams p = Planar(0.5);
  p.mount = SE3::FromYaw(0.3, Vec3(0.1, -0.05, 0.2));
  auto rng = Rng(10);
  for (int n = 0; n < 50; ++n) {
    const SE3 pose = SE3::FromYaw(Uniform(rng, -3.1, 3.1),
                                  Vec3(Uniform(rng, -4.5, 4.5), Uniform(rng, -4.5, 4.5), 0.0));
    const Scan2D scan = lidar2d_scan(room, pose, p);
    const SE3 sensor = pose * p.mount;
    const double heading = sensor.yaw();
    const double ox = sensor.translation().x();
    const double oy = sensor.translation().y();
    for (std::size_t i = 0; i < scan.ranges.size(); ++i) {
      const double th = heading + p.angle(i);
      double best = kInf;
      for (const Seg& s : segs) best = std::min(best, RaySegment(ox, oy, std::cos(th), std::sin(th), s));
      if (best < p.range_min || best > p.range_max) best = kInf;
      if (std::isinf(best)) {
        EXPECT_EQ(scan.ranges[i], kInf);
      } else {
        EXPECT_NEAR(scan.ranges[i], best, 1e-6) << "pose " << n << " beam " << i;
      }
    }
  }
}

TEST(Lidar2D, RejectsFractionalAngularGrid) {
  Lidar2DParams p = Planar();
  p.angle_max = p.angle_min + 10.5 * p.angle_increment;
  EXPECT_THROW(Validate(p), Error);
  EXPECT_NO_THROW(Validate(Planar()));
}

Lidar3DParams Spatial() {
  Lidar3DParams p;
  p.planar = Planar(1.0);
  p.planar.mount = SE3::FromTranslation(Vec3(0, 0, 0.5));
  p.channel_min = -15.0 * std::numbers::pi / 180.0;
  p.channel_max = 15.0 * std::numbers::pi / 180.0;
  p.channel_increment = 2.0 * std::numbers::pi / 180.0;
  return p;
}

TEST(Lidar3D, ZeroChannelReproducesPlanarScan) {
  const World room = MakeRectangularRoom(-5, -5, 5, 5, 1.0);
  const Lidar3DParams p = Spatial();
  ASSERT_EQ(p.channel_count(), 16u);
  const SE3 pose = SE3::FromYaw(0.7, Vec3(1.0, -2.0, 0.0));
  const Scan2D planar = lidar2d_scan(room, pose, p.planar);

  // A single phi = 0 channel keeps beam order, so misses are the only gaps.
  Lidar3DParams flat = p;
  flat.channel_min = 0.0;
  flat.channel_max = 0.0;
  const PointCloud cloud = lidar3d_scan(room, pose, flat);
  std::size_t k = 0;
  for (std::size_t i = 0; i < planar.ranges.size(); ++i) {
    if (std::isinf(planar.ranges[i])) continue;
    ASSERT_LT(k, cloud.points.size());
    const Vec3& q = cloud.points[k++];
    EXPECT_EQ(q.z(), 0.0);
    EXPECT_NEAR(q.head<2>().norm(), planar.ranges[i], 1e-12);
  }
  EXPECT_EQ(k, cloud.points.size());
}

TEST(Lidar3D, UpwardChannelsMissWithoutCeiling) {
  const World room = MakeRectangularRoom(-5, -5, 5, 5, 1.0);
  Lidar3DParams p = Spatial();
  // Negative phi points up: -sin(phi) > 0.
  p.channel_min = -0.6;
  p.channel_max = -0.6;
  const PointCloud cloud = lidar3d_scan(room, SE3{}, p);
  EXPECT_TRUE(cloud.points.empty());
}

TEST(Lidar3D, CardinalityBoundAndThreadIndependence) {
  const World room = MakeRectangularRoom(-5, -5, 5, 5, 1.0);
  const Lidar3DParams p = Spatial();
  const SE3 pose = SE3::FromYaw(-1.0, Vec3(0.5, 0.5, 0.0));
  const PointCloud serial = lidar3d_scan(room, pose, p, 0.0, 1);
  const PointCloud parallel = lidar3d_scan(room, pose, p, 0.0, 4);
  EXPECT_LE(serial.points.size(), p.channel_count() * p.planar.beam_count());
  ASSERT_EQ(serial.points.size(), parallel.points.size());
  for (std::size_t i = 0; i < serial.points.size(); ++i) {
    EXPECT_EQ(serial.points[i], parallel.points[i]);
    EXPECT_TRUE(serial.points[i].allFinite());
  }
}

TEST(Lidar3D, DownwardChannelsHitTheGround) {
  Lidar3DParams p = Spatial();
  p.channel_min = 0.2;
  p.channel_max = 0.2;
  const PointCloud cloud = lidar3d_scan(World{}, SE3{}, p);
  ASSERT_EQ(cloud.points.size(), p.planar.beam_count());
  for (const Vec3& q : cloud.points) EXPECT_NEAR(q.z(), -0.5, 1e-9);
}

// ---- camera ----

TEST(Camera, OnAxisPointProjectsToImageCentre) {
  CameraParams c;
  for (double d : {0.2, 1.0, 50.0, 99.0}) {
    const auto px = camera_project(Vec3(0, 0, -d), SE3{}, c);
    ASSERT_TRUE(px.has_value());
    EXPECT_EQ(px->u, c.width_px / 2.0);
    EXPECT_EQ(px->v, c.height_px / 2.0);
  }
  const SE3 pose = SE3::FromRollPitchYaw(0.1, -0.4, 2.0, Vec3(3, -1, 2));
  const Vec3 axis = pose.Rotate(Vec3(0, 0, -1));
  const auto px = camera_project(pose.translation() + 7.0 * axis, pose, c);
  ASSERT_TRUE(px.has_value());
  EXPECT_NEAR(px->u, c.width_px / 2.0, 1e-9);
  EXPECT_NEAR(px->v, c.height_px / 2.0, 1e-9);
}

TEST(Camera, PointBehindOrPastFarIsOutside) {
  CameraParams c;
  EXPECT_FALSE(camera_project(Vec3(0, 0, 1), SE3{}, c).has_value());
  EXPECT_FALSE(camera_project(Vec3(0, 0, -0.05), SE3{}, c).has_value());
  EXPECT_FALSE(camera_project(Vec3(0, 0, -200), SE3{}, c).has_value());
  EXPECT_FALSE(camera_project(Vec3(0, 0, 0), SE3{}, c).has_value());
}

TEST(Camera, MatchesIndependentMatrixPipeline) {
  CameraParams c;
  c.focal = 1.2;
  c.sensor_width = 36.0;
  c.sensor_height = 24.0;
  c.width_px = 1920;
  c.height_px = 1080;
  c.near = 0.3;
  c.far = 80.0;
  auto rng = Rng(11);
  int inside = 0;
  for (int n = 0; n < 1000; ++n) {
    const double roll = Uniform(rng, -0.5, 0.5);
    const double pitch = Uniform(rng, -0.5, 0.5);
    const double yaw = Uniform(rng, -3.0, 3.0);
    const std::array<double, 3> t{Uniform(rng, -5, 5), Uniform(rng, -5, 5), Uniform(rng, 0, 3)};
    const SE3 pose = SE3::FromRollPitchYaw(roll, pitch, yaw, Vec3(t[0], t[1], t[2]));
    // Sample in the camera frustum then move to the world frame, so most
    // points land inside.
    const double depth = Uniform(rng, 0.2, 90.0);
    const Vec3 local(Uniform(rng, -1.1, 1.1) * depth / c.focal,
                     Uniform(rng, -1.1, 1.1) * depth * c.aspect() / c.focal, -depth);
    const Vec3 w = pose * local;
    const auto oracle = OracleProject({w.x(), w.y(), w.z()}, roll, pitch, yaw, t, c);
    const auto px = camera_project(w, pose, c);
    ASSERT_EQ(px.has_value(), oracle.has_value()) << "point " << n;
    if (!px) continue;
    ++inside;
    EXPECT_NEAR(px->u, (*oracle)[0], 1e-6);
    EXPECT_NEAR(px->v, (*oracle)[1], 1e-6);
  }
  EXPECT_GT(inside, 500);
}

TEST(Camera, NearPlaneCornersStayInNdcRange) {
  CameraParams c;
  const double half_w = c.near / c.focal;
  const double half_h = c.near * c.aspect() / c.focal;
  for (double sx : {-1.0, 1.0}) {
    for (double sy : {-1.0, 1.0}) {
      const auto px = camera_project(Vec3(sx * half_w, sy * half_h, -c.near), SE3{}, c);
      ASSERT_TRUE(px.has_value());
      const double x = px->u / c.width_px * 2 - 1;
      const double y = 1 - px->v / c.height_px * 2;
      EXPECT_LE(std::abs(x), 1 + 1e-9);
      EXPECT_LE(std::abs(y), 1 + 1e-9);
    }
  }
}

TEST(Camera, InvalidParameters) {
  CameraParams c;
  c.near = 5.0;
  c.far = 1.0;
  EXPECT_THROW(Validate(c), Error);
}

// ---- encoder ----

TEST(Encoder, Cases) {
  const EncoderParams p{16.0, 120.0};
  EXPECT_EQ(encoder_read(2.5, p), 4800);
  EXPECT_EQ(encoder_read(0.0, p), 0);
  EXPECT_EQ(encoder_read(0.999 / (16.0 * 120.0), p), 0);
  EXPECT_EQ(encoder_read(1.0 / (16.0 * 120.0), p), 1);
}

TEST(Encoder, NonDecreasingWhenRollingForward) {
  const EncoderParams p{16.0, 120.0};
  auto rng = Rng(12);
  double revs = 0.0;
  std::int64_t last = encoder_read(revs, p);
  for (int k = 0; k < 10000; ++k) {
    revs += Uniform(rng, 0.0, 1e-3);
    const std::int64_t ticks = encoder_read(revs, p);
    EXPECT_GE(ticks, last);
    last = ticks;
  }
}

// ---- inertial navigation ----

TEST(Ins, StationaryReadsGravity) {
  GaussianNoise noise;
  const RigidBodyState body;
  const InsReading r = ins_read(body, Vec3::Zero(), 0.01, InsConfig{}, noise);
  EXPECT_EQ(r.imu.angular_velocity, Vec3::Zero());
  EXPECT_NEAR(r.imu.linear_acceleration.x(), 0.0, 1e-15);
  EXPECT_NEAR(r.imu.linear_acceleration.y(), 0.0, 1e-15);
  EXPECT_NEAR(r.imu.linear_acceleration.z(), 9.81, 1e-2);
  EXPECT_EQ(r.imu.quaternion, (std::array<double, 4>{1.0, 0.0, 0.0, 0.0}));
  InsConfig kinematic;
  kinematic.gravity_inclusive = false;
  EXPECT_EQ(ins_read(body, Vec3::Zero(), 0.01, kinematic, noise).imu.linear_acceleration, Vec3::Zero());
}

TEST(Ins, CircularMotionOracle) {
  const double radius = 4.0;
  const double speed = 2.0;
  const double omega = speed / radius;
  const double dt = 0.01;
  const double t = 3.0;
  auto velocity = [&](double time) {
    const double phase = omega * time;
    return Vec3(-speed * std::sin(phase), speed * std::cos(phase), 0.0);
  };
  RigidBodyState body;
  const double phase = omega * t;
  body.pose = SE3::FromYaw(phase + std::numbers::pi / 2.0,
                           Vec3(radius * std::cos(phase), radius * std::sin(phase), 0.0));
  body.linear_velocity = velocity(t);
  body.angular_velocity = Vec3(0, 0, omega);
  GaussianNoise noise;
  InsConfig config;
  config.gravity_inclusive = false;
  const InsReading r = ins_read(body, velocity(t - dt), dt, config, noise);
  EXPECT_NEAR(r.imu.angular_velocity.z(), speed / radius, 1e-15);
  // The finite difference is the chord of the velocity circle.
  const double centripetal = speed * speed / radius;
  EXPECT_NEAR(r.imu.linear_acceleration.y(), centripetal, 1e-4 * centripetal);
  EXPECT_NEAR(r.imu.linear_acceleration.x(), 0.0, omega * dt * centripetal);
  EXPECT_NEAR(r.position.x(), radius * std::cos(phase), 1e-12);
  EXPECT_NEAR(r.imu.euler.z(), NormalizeAngle(phase + std::numbers::pi / 2.0), 1e-12);
}

TEST(Ins, QuaternionIsUnitAndAgreesWithEuler) {
  auto rng = Rng(13);
  GaussianNoise noise;
  for (int n = 0; n < 200; ++n) {
    RigidBodyState body;
    const double roll = Uniform(rng, -1, 1);
    const double pitch = Uniform(rng, -1.2, 1.2);
    const double yaw = Uniform(rng, -3, 3);
    body.pose = SE3::FromRollPitchYaw(roll, pitch, yaw);
    const InsReading r = ins_read(body, Vec3::Zero(), 0.01, InsConfig{}, noise);
    const auto& q = r.imu.quaternion;
    EXPECT_NEAR(q[0] * q[0] + q[1] * q[1] + q[2] * q[2] + q[3] * q[3], 1.0, 1e-9);
    // ZYX Euler angles from the quaternion, computed by hand.
    const double qr = std::atan2(2 * (q[0] * q[1] + q[2] * q[3]), 1 - 2 * (q[1] * q[1] + q[2] * q[2]));
    const double qp = std::asin(2 * (q[0] * q[2] - q[3] * q[1]));
    const double qy = std::atan2(2 * (q[0] * q[3] + q[1] * q[2]), 1 - 2 * (q[2] * q[2] + q[3] * q[3]));
    EXPECT_NEAR(qr, r.imu.euler.x(), 1e-9);
    EXPECT_NEAR(qp, r.imu.euler.y(), 1e-9);
    EXPECT_NEAR(qy, r.imu.euler.z(), 1e-9);
    EXPECT_NEAR(roll, r.imu.euler.x(), 1e-9);
    EXPECT_NEAR(yaw, r.imu.euler.z(), 1e-9);
  }
}

TEST(Ins, NoiseIsSeededAndZeroMean) {
  InsConfig config;
  config.position_sigma = 0.05;
  RigidBodyState body;
  body.pose = SE3::FromTranslation(Vec3(1, 2, 0));
  GaussianNoise a(42);
  GaussianNoise b(42);
  double sum = 0.0;
  const int n = 10000;
  for (int k = 0; k < n; ++k) {
    const InsReading ra = ins_read(body, Vec3::Zero(), 0.01, config, a);
    const InsReading rb = ins_read(body, Vec3::Zero(), 0.01, config, b);
    EXPECT_EQ(ra.position, rb.position);
    sum += ra.position.x();
  }
  EXPECT_NEAR(sum / n, 1.0, 3 * 0.05 / 100.0);
}

// ---- actuator feedback ----

TEST(Actuator, SettledNoiselessIsExact) {
  VehicleState s;
  s.throttle = 0.4;
  s.steering = -0.2;
  ActuatorFeedback feedback;
  const ActuatorReading r = feedback.Read(s);
  EXPECT_EQ(r.throttle, 0.4);
  EXPECT_EQ(r.steering, -0.2);
}

TEST(Actuator, MidSlewReportsCurrentAngle) {
  VehicleParams params;
  params.powertrain.wheel_mass = 0.1;
  params.powertrain.wheel_radius = 0.05;
  params.powertrain.max_wheel_accel = 10.0;
  params.steering.sensitivity = 1.0;
  params.steering.limit = 0.5;
  for (int i = 0; i < 4; ++i) {
    params.corners[i].mass = 1.0;
    params.corners[i].position = Vec3(i < 2 ? 0.15 : -0.15, i % 2 == 0 ? 0.1 : -0.1, 0.05);
  }
  const VehicleModel model(params);
  DriveCommand cmd;
  cmd.steering = 0.4;
  const VehicleState s = model.Step(model.InitialState(0, 0, 0), cmd, World{}, 0.1);
  ActuatorFeedback feedback;
  const ActuatorReading r = feedback.Read(s);
  EXPECT_NEAR(r.steering, 0.1, 1e-12);
  EXPECT_NE(r.steering, cmd.steering);
}

TEST(Actuator, NoisyMeanConverges) {
  VehicleState s;
  s.throttle = 0.3;
  s.steering = 0.1;
  const double sigma = 0.02;
  ActuatorFeedback feedback(sigma, 99);
  double throttle = 0.0;
  double steering = 0.0;
  const int n = 10000;
  for (int k = 0; k < n; ++k) {
    const ActuatorReading r = feedback.Read(s);
    throttle += r.throttle;
    steering += r.steering;
  }
  EXPECT_NEAR(throttle / n, 0.3, 3 * sigma / 100);
  EXPECT_NEAR(steering / n, 0.1, 3 * sigma / 100);
}

}  // namespace
}  // namespace twinforge
